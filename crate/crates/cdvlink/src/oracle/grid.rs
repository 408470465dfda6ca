//! Sphere sampling and marching tetrahedra in the 4-cube boundary model.

use super::{GridConfig, OracleError};
use crate::jet::{rat_int, Jet, Rat, Var};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// One connected component of the sampled surface.
#[derive(Debug, Clone)]
pub struct SampledComponent {
    pub euler: i64,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Interpolated position of the canonical (smallest-key) surface vertex.
    pub representative: [f64; 4],
    /// A few sample points spread over the component, for orbit matching.
    pub samples: Vec<[f64; 4]>,
}

/// Sampled link: components sorted by their canonical vertex key.
#[derive(Debug, Clone)]
pub struct SampledLink {
    pub components: Vec<SampledComponent>,
    pub resolution: u32,
    pub epsilon: Rat,
    /// Mesh for optional export: positions and triangles (component id each).
    pub mesh_vertices: Vec<[f64; 4]>,
    pub mesh_triangles: Vec<[usize; 3]>,
    pub triangle_component: Vec<usize>,
    /// Map from occupied grid cell to the components meeting it.
    cell_components: HashMap<CellKey, Vec<usize>>,
    signed_perm_res: u32,
}

impl SampledLink {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn euler_multiset(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.components.iter().map(|c| c.euler).collect();
        v.sort();
        v
    }
}

/// Facet-addressed grid cell: (pinned axis, side, 3 cell indices).
type CellKey = (usize, i8, [u32; 3]);

/// Global lattice vertex on the cube boundary, coordinates in 0..=res per
/// axis scaled so lattice value i means coordinate 2 i / res - 1.
type VertexKey = [u32; 4];

fn vertex_lattice(res: u32, key: &VertexKey) -> [i64; 4] {
    // Integer coordinates scaled by res: value in [-res, res].
    [
        2 * key[0] as i64 - res as i64,
        2 * key[1] as i64 - res as i64,
        2 * key[2] as i64 - res as i64,
        2 * key[3] as i64 - res as i64,
    ]
}

fn vertex_position(res: u32, key: &VertexKey, cfg: &GridConfig) -> [f64; 4] {
    let lat = vertex_lattice(res, key);
    let v: [f64; 4] = [
        lat[0] as f64 / res as f64,
        lat[1] as f64 / res as f64,
        lat[2] as f64 / res as f64,
        lat[3] as f64 / res as f64,
    ];
    let eps = rat_to_f64(&cfg.epsilon);
    match cfg.weights {
        None => {
            let norm = (v.iter().map(|x| x * x).sum::<f64>()).sqrt();
            [
                eps * v[0] / norm,
                eps * v[1] / norm,
                eps * v[2] / norm,
                eps * v[3] / norm,
            ]
        }
        Some(u) => {
            // Solve sum (lambda v_i)^(2 u_i) = eps^2 by bisection in lambda.
            let level = eps * eps;
            let f = |lambda: f64| -> f64 {
                (0..4)
                    .map(|i| (lambda * v[i]).abs().powi(2 * u[i] as i32))
                    .sum::<f64>()
                    - level
            };
            let (mut lo, mut hi) = (0.0f64, 4.0f64.max(eps * 4.0));
            while f(hi) < 0.0 {
                hi *= 2.0;
            }
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if f(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let lambda = 0.5 * (lo + hi);
            [lambda * v[0], lambda * v[1], lambda * v[2], lambda * v[3]]
        }
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// Dense polynomial with f64 coefficients for fast grid evaluation.
struct CompiledPoly {
    terms: Vec<([u8; 4], f64)>,
}

impl CompiledPoly {
    fn compile(f: &Jet) -> CompiledPoly {
        CompiledPoly {
            terms: f
                .terms()
                .map(|(m, c)| {
                    (
                        [m.0[0] as u8, m.0[1] as u8, m.0[2] as u8, m.0[3] as u8],
                        rat_to_f64(c),
                    )
                })
                .collect(),
        }
    }

    fn eval(&self, p: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for i in 0..4 {
                for _ in 0..e[i] {
                    t *= p[i];
                }
            }
            acc += t;
        }
        acc
    }
}

/// Exact sign of F at the radially normalized lattice point, or None when F
/// vanishes there exactly. Only valid for the round-sphere model.
fn exact_sign(f: &Jet, res: u32, key: &VertexKey, eps: &Rat) -> Option<bool> {
    let lat = vertex_lattice(res, key);
    let v: [Rat; 4] = [
        rat_int(lat[0]),
        rat_int(lat[1]),
        rat_int(lat[2]),
        rat_int(lat[3]),
    ];
    // F(eps v / r) with r = |v|; multiply by r^D and split into P + r Q with
    // P, Q rational, using r^2 = rho.
    let rho: Rat = v.iter().map(|x| x.clone() * x.clone()).sum();
    let top = f.top_degree().unwrap_or(0);
    let mut p_part = Rat::zero();
    let mut q_part = Rat::zero();
    // Group terms by total degree.
    let mut by_degree: HashMap<u32, Rat> = HashMap::new();
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for i in 0..4 {
            for _ in 0..m.0[i] {
                t *= v[i].clone();
            }
        }
        *by_degree.entry(m.degree()).or_insert_with(Rat::zero) += t;
    }
    for (d, a) in by_degree {
        let mut term = a;
        for _ in 0..d {
            term *= eps.clone();
        }
        let k = top - d;
        for _ in 0..(k / 2) {
            term *= rho.clone();
        }
        if k.is_multiple_of(2) {
            p_part += term;
        } else {
            q_part += term;
        }
    }
    // sign(P + r Q), r = sqrt(rho) > 0.
    let sp = if p_part.is_zero() {
        0
    } else if p_part.is_positive() {
        1
    } else {
        -1
    };
    let sq = if q_part.is_zero() {
        0
    } else if q_part.is_positive() {
        1
    } else {
        -1
    };
    match (sp, sq) {
        (0, 0) => None,
        (0, s) | (s, 0) => Some(s > 0),
        (a, b) if a == b => Some(a > 0),
        _ => {
            let lhs = p_part.clone() * p_part; // P^2
            let rhs = rho * q_part.clone() * q_part; // rho Q^2
            match lhs.cmp(&rhs) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(sp > 0),
                std::cmp::Ordering::Less => Some(sq > 0),
            }
        }
    }
}

/// The six Kuhn tetrahedra of a unit 3-cell, as chains from the minimal to
/// the maximal corner adding one (globally ordered) axis at a time.
const AXIS_ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

struct FacetFrame {
    pinned_axis: usize,
    side: i8,
    free_axes: [usize; 3],
}

fn facets() -> Vec<FacetFrame> {
    let mut out = Vec::with_capacity(8);
    for pinned_axis in 0..4 {
        for side in [-1i8, 1] {
            let mut free = [0usize; 3];
            let mut k = 0;
            for a in 0..4 {
                if a != pinned_axis {
                    free[k] = a;
                    k += 1;
                }
            }
            out.push(FacetFrame {
                pinned_axis,
                side,
                free_axes: free,
            });
        }
    }
    out
}

fn facet_vertex(frame: &FacetFrame, res: u32, ijk: [u32; 3]) -> VertexKey {
    let mut key = [0u32; 4];
    key[frame.pinned_axis] = if frame.side > 0 { res } else { 0 };
    for (slot, &axis) in frame.free_axes.iter().enumerate() {
        key[axis] = ijk[slot];
    }
    key
}

struct SignGrid {
    /// true = positive.
    signs: Vec<bool>,
    res: u32,
}

impl SignGrid {
    fn index(&self, ijk: [u32; 3]) -> usize {
        let n = self.res as usize + 1;
        (ijk[0] as usize * n + ijk[1] as usize) * n + ijk[2] as usize
    }

    fn at(&self, ijk: [u32; 3]) -> bool {
        self.signs[self.index(ijk)]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Sample the zero surface of F on the sphere of the given configuration.
///
/// Deterministic: identical configuration gives an identical result. Exact
/// sign evaluation resolves any vertex whose floating-point value falls under
/// the tolerance. A vertex lying exactly on the surface is counted as
/// negative, which extracts the level set F = delta for an infinitesimal
/// positive delta; near a regular zero level this is the same surface.
pub fn sample_link(f: &Jet, cfg: &GridConfig) -> Result<SampledLink, OracleError> {
    let mut cfg_now = cfg.clone();
    let mut halvings = 0;
    loop {
        match sample_once(f, &cfg_now) {
            Ok(link) => return Ok(link),
            Err(SampleRetry::NearSingular) => {
                halvings += 1;
                if halvings > 4 {
                    return Err(OracleError::SamplingFailed(
                        "singular locus keeps meeting the sample sphere".into(),
                    ));
                }
                cfg_now.epsilon = cfg_now.epsilon.clone() / rat_int(2);
            }
            Err(SampleRetry::NonManifold(msg)) => {
                return Err(OracleError::ResolutionTooCoarse(msg));
            }
        }
    }
}

enum SampleRetry {
    NearSingular,
    NonManifold(String),
}

fn sample_once(f: &Jet, cfg: &GridConfig) -> Result<SampledLink, SampleRetry> {
    let res = cfg.resolution.max(16);
    let poly = CompiledPoly::compile(f);
    let grads: Vec<CompiledPoly> = Var::ALL
        .iter()
        .map(|&v| CompiledPoly::compile(&f.derivative(v)))
        .collect();
    let exact_ok = cfg.weights.is_none();

    // Surface vertices keyed by the crossing edge (pair of lattice keys).
    let mut edge_vertex: HashMap<(VertexKey, VertexKey), usize> = HashMap::new();
    let mut positions: Vec<[f64; 4]> = Vec::new();
    let mut edge_keys: Vec<(VertexKey, VertexKey)> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut triangle_cell: Vec<CellKey> = Vec::new();
    let mut near_singular = false;

    for frame in facets() {
        // Vertex signs and values for this facet.
        let n = res as usize + 1;
        let mut values = vec![0.0f64; n * n * n];
        let mut grid = SignGrid {
            signs: vec![false; n * n * n],
            res,
        };
        for i in 0..=res {
            for j in 0..=res {
                for k in 0..=res {
                    let ijk = [i, j, k];
                    let key = facet_vertex(&frame, res, ijk);
                    let pos = vertex_position(res, &key, cfg);
                    let val = poly.eval(&pos);
                    let idx = grid.index(ijk);
                    values[idx] = val;
                    let positive = if val.abs() < cfg.tolerance {
                        if exact_ok {
                            // Exact zero counts as negative: the infinitesimal
                            // positive level shift.
                            exact_sign(f, res, &key, &cfg.epsilon).unwrap_or(false)
                        } else {
                            val > 0.0
                        }
                    } else {
                        val > 0.0
                    };
                    grid.signs[idx] = positive;
                    if val.abs() < cfg.tolerance {
                        let gnorm: f64 = grads
                            .iter()
                            .map(|g| g.eval(&pos).powi(2))
                            .sum::<f64>()
                            .sqrt();
                        if gnorm < cfg.tolerance.sqrt() {
                            near_singular = true;
                        }
                    }
                }
            }
        }
        if near_singular {
            return Err(SampleRetry::NearSingular);
        }

        // March the 6 Kuhn tetrahedra of each cell.
        fn corner_of(base: [u32; 3], path: &[usize], upto: usize) -> [u32; 3] {
            let mut c = base;
            for &ax in &path[..upto] {
                c[ax] += 1;
            }
            c
        }
        for i in 0..res {
            for j in 0..res {
                for k in 0..res {
                    let base = [i, j, k];
                    for order in AXIS_ORDERS {
                        let corners: [[u32; 3]; 4] = [
                            corner_of(base, &order, 0),
                            corner_of(base, &order, 1),
                            corner_of(base, &order, 2),
                            corner_of(base, &order, 3),
                        ];
                        let signs = [
                            grid.at(corners[0]),
                            grid.at(corners[1]),
                            grid.at(corners[2]),
                            grid.at(corners[3]),
                        ];
                        let mask = (signs[0] as u8)
                            | (signs[1] as u8) << 1
                            | (signs[2] as u8) << 2
                            | (signs[3] as u8) << 3;
                        let tris: &[[(usize, usize); 3]] = match mask {
                            0x00 | 0x0F => &[],
                            0x01 | 0x0E => &[[(0, 1), (0, 2), (0, 3)]],
                            0x02 | 0x0D => &[[(1, 0), (1, 2), (1, 3)]],
                            0x04 | 0x0B => &[[(2, 0), (2, 1), (2, 3)]],
                            0x08 | 0x07 => &[[(3, 0), (3, 1), (3, 2)]],
                            0x03 | 0x0C => {
                                &[[(0, 2), (0, 3), (1, 2)], [(1, 3), (1, 2), (0, 3)]]
                            }
                            0x05 | 0x0A => {
                                &[[(0, 1), (0, 3), (2, 1)], [(2, 3), (2, 1), (0, 3)]]
                            }
                            0x06 | 0x09 => {
                                &[[(1, 0), (1, 3), (2, 0)], [(2, 3), (2, 0), (1, 3)]]
                            }
                            _ => unreachable!(),
                        };
                        for tri in tris {
                            let mut ids = [0usize; 3];
                            for (slot, &(a, b)) in tri.iter().enumerate() {
                                let ka = facet_vertex(&frame, res, corners[a]);
                                let kb = facet_vertex(&frame, res, corners[b]);
                                let ekey = if ka <= kb { (ka, kb) } else { (kb, ka) };
                                let next_id = positions.len();
                                let id = *edge_vertex.entry(ekey).or_insert_with(|| {
                                    let va = values[grid.index(corners[a])];
                                    let vb = values[grid.index(corners[b])];
                                    let pa = vertex_position(res, &ka, cfg);
                                    let pb = vertex_position(res, &kb, cfg);
                                    // Interpolate toward the zero crossing.
                                    let denom = vb - va;
                                    let tt = if denom.abs() < f64::MIN_POSITIVE {
                                        0.5
                                    } else {
                                        (-va / denom).clamp(0.0, 1.0)
                                    };
                                    let p = [
                                        pa[0] + tt * (pb[0] - pa[0]),
                                        pa[1] + tt * (pb[1] - pa[1]),
                                        pa[2] + tt * (pb[2] - pa[2]),
                                        pa[3] + tt * (pb[3] - pa[3]),
                                    ];
                                    positions.push(p);
                                    edge_keys.push(ekey);
                                    next_id
                                });
                                ids[slot] = id;
                            }
                            if ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2] {
                                triangles.push(ids);
                                triangle_cell.push((
                                    frame.pinned_axis,
                                    frame.side,
                                    base,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    // Union-find over surface vertices through triangles.
    let mut uf = UnionFind::new(positions.len());
    for t in &triangles {
        uf.union(t[0], t[1]);
        uf.union(t[1], t[2]);
    }
    // Edge multiplicity check: every mesh edge must bound exactly two
    // triangles on a closed surface.
    let mut edge_count: HashMap<(usize, usize), u32> = HashMap::new();
    for t in &triangles {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            let e = (a.min(b), a.max(b));
            *edge_count.entry(e).or_insert(0) += 1;
        }
    }
    for (e, c) in &edge_count {
        if *c != 2 {
            return Err(SampleRetry::NonManifold(format!(
                "mesh edge {:?} bounds {} triangles",
                e, c
            )));
        }
    }

    // Collect components, canonically labeled by the smallest contained
    // lattice edge key.
    let mut root_members: HashMap<usize, Vec<usize>> = HashMap::new();
    for vid in 0..positions.len() {
        root_members.entry(uf.find(vid)).or_default().push(vid);
    }
    let mut comp_order: Vec<(usize, (VertexKey, VertexKey))> = root_members
        .keys()
        .map(|&root| {
            let min_key = root_members[&root]
                .iter()
                .map(|&v| edge_keys[v])
                .min()
                .unwrap();
            (root, min_key)
        })
        .collect();
    comp_order.sort_by_key(|&(_, key)| key);
    let comp_index: HashMap<usize, usize> = comp_order
        .iter()
        .enumerate()
        .map(|(i, &(root, _))| (root, i))
        .collect();

    let mut per_comp_edges: Vec<usize> = vec![0; comp_order.len()];
    for e in edge_count.keys() {
        let c = comp_index[&uf.find(e.0)];
        per_comp_edges[c] += 1;
    }
    let mut per_comp_faces: Vec<usize> = vec![0; comp_order.len()];
    let mut triangle_component: Vec<usize> = Vec::with_capacity(triangles.len());
    let mut cell_components: HashMap<CellKey, Vec<usize>> = HashMap::new();
    for (tid, t) in triangles.iter().enumerate() {
        let c = comp_index[&uf.find(t[0])];
        per_comp_faces[c] += 1;
        triangle_component.push(c);
        let entry = cell_components.entry(triangle_cell[tid]).or_default();
        if !entry.contains(&c) {
            entry.push(c);
        }
    }
    let mut components = Vec::with_capacity(comp_order.len());
    for (ci, &(root, _)) in comp_order.iter().enumerate() {
        let members = &root_members[&root];
        let v = members.len();
        let e = per_comp_edges[ci];
        let fcount = per_comp_faces[ci];
        let euler = v as i64 - e as i64 + fcount as i64;
        let rep_vid = members
            .iter()
            .copied()
            .min_by_key(|&vid| edge_keys[vid])
            .unwrap();
        let stride = (members.len() / 8).max(1);
        let mut sorted_members = members.clone();
        sorted_members.sort_by_key(|&vid| edge_keys[vid]);
        let samples: Vec<[f64; 4]> = sorted_members
            .iter()
            .step_by(stride)
            .take(8)
            .map(|&vid| positions[vid])
            .collect();
        components.push(SampledComponent {
            euler,
            vertices: v,
            edges: e,
            faces: fcount,
            representative: positions[rep_vid],
            samples,
        });
    }
    Ok(SampledLink {
        components,
        resolution: res,
        epsilon: cfg.epsilon.clone(),
        mesh_vertices: positions,
        mesh_triangles: triangles,
        triangle_component,
        cell_components,
        signed_perm_res: res,
    })
}

/// Orbit structure of the components under a sign involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentOrbits {
    /// Components mapped to themselves.
    pub fixed: Vec<usize>,
    /// Unordered swapped pairs (a < b).
    pub swapped: Vec<(usize, usize)>,
}

/// Match components of a sampled link under a coordinate sign involution.
///
/// Each component's sample points are mapped through the involution and
/// located in the cell grid; a consistent image component must be found for
/// the match to be accepted.
pub fn match_components(
    link: &SampledLink,
    involution: [i8; 4],
) -> Result<ComponentOrbits, OracleError> {
    assert!(involution.iter().all(|s| *s == 1 || *s == -1));
    let res = link.signed_perm_res;
    let mut image: Vec<Option<usize>> = vec![None; link.components.len()];
    for (ci, comp) in link.components.iter().enumerate() {
        let mut votes: HashMap<usize, usize> = HashMap::new();
        for p in &comp.samples {
            let q = [
                p[0] * involution[0] as f64,
                p[1] * involution[1] as f64,
                p[2] * involution[2] as f64,
                p[3] * involution[3] as f64,
            ];
            for target in locate_cells(&q, res) {
                if let Some(comps) = link.cell_components.get(&target) {
                    for &c in comps {
                        *votes.entry(c).or_insert(0) += 1;
                    }
                }
            }
        }
        let best = votes.iter().max_by_key(|(_, &v)| v);
        match best {
            Some((&c, _)) if votes.len() == 1 || is_clear_winner(&votes, c) => {
                image[ci] = Some(c);
            }
            _ => {
                return Err(OracleError::ResolutionTooCoarse(format!(
                    "component {ci} image is ambiguous under the involution"
                )))
            }
        }
    }
    // Verify the matching is an involution.
    let mut fixed = Vec::new();
    let mut swapped = Vec::new();
    for (ci, img) in image.iter().enumerate() {
        let j = img.unwrap();
        if image[j] != Some(ci) {
            return Err(OracleError::ResolutionTooCoarse(
                "component matching is not an involution".into(),
            ));
        }
        if j == ci {
            fixed.push(ci);
        } else if ci < j {
            swapped.push((ci, j));
        }
    }
    Ok(ComponentOrbits { fixed, swapped })
}

fn is_clear_winner(votes: &HashMap<usize, usize>, c: usize) -> bool {
    let best = votes[&c];
    votes
        .iter()
        .all(|(&k, &v)| k == c || 3 * v <= best)
}

/// Cells whose closed region may contain the cube-boundary projection of a
/// point near the sphere.
fn locate_cells(p: &[f64; 4], res: u32) -> Vec<CellKey> {
    // Project radially to the cube boundary.
    let maxc = p.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if maxc == 0.0 {
        return vec![];
    }
    let v = [p[0] / maxc, p[1] / maxc, p[2] / maxc, p[3] / maxc];
    let mut out = Vec::new();
    for (axis, side) in (0..4).flat_map(|a| [(a, 1i8), (a, -1i8)]) {
        let pinned = v[axis];
        if (pinned - side as f64).abs() > 1e-9 {
            continue;
        }
        let mut free = Vec::with_capacity(3);
        for a in 0..4 {
            if a != axis {
                free.push(a);
            }
        }
        // Cell indices along the free axes, with both straddling cells when
        // the coordinate is near a lattice plane.
        let mut choices: Vec<Vec<u32>> = Vec::with_capacity(3);
        for &a in &free {
            let x = (v[a] + 1.0) * 0.5 * res as f64;
            let lo = (x.floor() as i64).clamp(0, res as i64 - 1) as u32;
            let mut c = vec![lo];
            if (x - x.round()).abs() < 1e-6 {
                let r = x.round() as i64;
                for cand in [r - 1, r] {
                    let cand = cand.clamp(0, res as i64 - 1) as u32;
                    if !c.contains(&cand) {
                        c.push(cand);
                    }
                }
            }
            choices.push(c);
        }
        for &i in &choices[0] {
            for &j in &choices[1] {
                for &k in &choices[2] {
                    out.push((axis, side, [i, j, k]));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{mono, rat, rat_int};

    fn jet(terms: &[(crate::jet::Monomial, i64)]) -> Jet {
        Jet::from_terms(terms.iter().map(|(m, c)| (*m, rat_int(*c))), 8)
    }

    #[test]
    fn two_spheres() {
        // x^2 + y^2 + z^2 - t^2 = 0 on the sphere: two spherical caps.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 2, 0), 1),
            (mono(0, 0, 0, 2), -1),
        ]);
        let cfg = GridConfig {
            resolution: 24,
            ..Default::default()
        };
        let link = sample_link(&f, &cfg).unwrap();
        assert_eq!(link.component_count(), 2);
        assert_eq!(link.euler_multiset(), vec![2, 2]);
    }

    #[test]
    fn torus_link() {
        // x^2 + y^2 - z^2 - t^4: one torus.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 2, 0), -1),
            (mono(0, 0, 0, 4), -1),
        ]);
        let cfg = GridConfig {
            resolution: 24,
            ..Default::default()
        };
        let link = sample_link(&f, &cfg).unwrap();
        assert_eq!(link.component_count(), 1);
        assert_eq!(link.euler_multiset(), vec![0]);
    }

    #[test]
    fn empty_link() {
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 2, 0), 1),
            (mono(0, 0, 0, 2), 1),
        ]);
        let cfg = GridConfig {
            resolution: 16,
            ..Default::default()
        };
        let link = sample_link(&f, &cfg).unwrap();
        assert_eq!(link.component_count(), 0);
    }

    #[test]
    fn determinism() {
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 3, 0), 1),
            (mono(0, 0, 0, 3), -1),
        ]);
        let cfg = GridConfig {
            resolution: 16,
            ..Default::default()
        };
        let a = sample_link(&f, &cfg).unwrap();
        let b = sample_link(&f, &cfg).unwrap();
        assert_eq!(a.component_count(), b.component_count());
        assert_eq!(a.euler_multiset(), b.euler_multiset());
        assert_eq!(a.mesh_vertices.len(), b.mesh_vertices.len());
        for (u, v) in a.mesh_vertices.iter().zip(&b.mesh_vertices) {
            assert_eq!(u, v);
        }
    }

    #[test]
    fn swapped_pair_under_involution() {
        // The two components of x^2 - y^2 + z^4 + t^4 = 0 are interchanged
        // by (x,y,z,t) -> (-x,-y,-z,t).
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), -1),
            (mono(0, 0, 4, 0), 1),
            (mono(0, 0, 0, 4), 1),
        ]);
        let cfg = GridConfig {
            resolution: 24,
            ..Default::default()
        };
        let link = sample_link(&f, &cfg).unwrap();
        assert_eq!(link.component_count(), 2);
        let orbits = match_components(&link, [-1, -1, -1, 1]).unwrap();
        assert!(orbits.fixed.is_empty());
        assert_eq!(orbits.swapped.len(), 1);
    }

    #[test]
    fn fixed_torus_under_involution() {
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 2, 0), -1),
            (mono(0, 0, 0, 4), -1),
        ]);
        let cfg = GridConfig {
            resolution: 24,
            ..Default::default()
        };
        let link = sample_link(&f, &cfg).unwrap();
        let orbits = match_components(&link, [-1, -1, -1, 1]).unwrap();
        assert_eq!(orbits.fixed, vec![0]);
        assert!(orbits.swapped.is_empty());
    }

    #[test]
    fn lattice_zeros_on_a_regular_cone() {
        // x^2+y^2+z^2-t^2 vanishes at lattice points like (0,0,1,1); the
        // level-shift tie-break must still produce the two caps.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 2, 0), 1),
            (mono(0, 0, 0, 2), -1),
        ]);
        let cfg = GridConfig {
            resolution: 16,
            epsilon: rat(1, 2),
            ..Default::default()
        };
        let link = sample_link(&f, &cfg).unwrap();
        assert_eq!(link.component_count(), 2);
        assert_eq!(link.euler_multiset(), vec![2, 2]);
    }

    #[test]
    fn singular_zero_set_is_rejected() {
        // z^2 - t^2: two hyperplanes crossing in a 2-plane; the sampler must
        // report the singular locus rather than a fake surface.
        let f = jet(&[(mono(0, 0, 2, 0), 1), (mono(0, 0, 0, 2), -1)]);
        let cfg = GridConfig {
            resolution: 16,
            epsilon: rat(1, 2),
            ..Default::default()
        };
        assert!(matches!(
            sample_link(&f, &cfg),
            Err(OracleError::SamplingFailed(_)) | Err(OracleError::ResolutionTooCoarse(_))
        ));
    }
}
