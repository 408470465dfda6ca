//! Component counting for real projective plane curves, by sampling the
//! affine cone on the 2-sphere and identifying antipodes.

use super::OracleError;
use crate::classify::cubic::TriPoly;
use crate::jet::Rat;
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// Lattice vertex on the boundary of the 3-cube, entries in 0..=res.
type VKey = [u32; 3];

fn lattice(res: u32, k: &VKey) -> [i64; 3] {
    [
        2 * k[0] as i64 - res as i64,
        2 * k[1] as i64 - res as i64,
        2 * k[2] as i64 - res as i64,
    ]
}

fn antipode(res: u32, k: &VKey) -> VKey {
    [res - k[0], res - k[1], res - k[2]]
}

/// Exact sign of the form at a lattice vertex, with an odd lexicographic
/// tie-break off the zero set so antipodal consistency is preserved for
/// odd-degree forms.
fn vertex_sign(f: &crate::jet::Jet, res: u32, k: &VKey) -> bool {
    let lat = lattice(res, k);
    let val = f.eval(&[
        Rat::zero(),
        Rat::from_integer(lat[0].into()),
        Rat::from_integer(lat[1].into()),
        Rat::from_integer(lat[2].into()),
    ]);
    if !val.is_zero() {
        return val.is_positive();
    }
    // Tie-break: sign of the first nonzero lattice coordinate. An odd form
    // satisfies f(-v) = -f(v), and this functional is odd too.
    for c in lat {
        if c != 0 {
            return c > 0;
        }
    }
    true
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
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
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

/// Number of connected components of the projective curve (f3 = 0) in the
/// real projective plane, for a form with smooth real zero locus. The sphere
/// double cover is sampled on the cube boundary and antipodal points are
/// identified exactly through the lattice symmetry.
pub fn projective_curve_components(f3: &TriPoly, resolution: u32) -> Result<usize, OracleError> {
    let res = resolution.max(16);
    if f3.is_zero() {
        return Err(OracleError::NotSmooth("zero form".into()));
    }
    if f3.total_degree() == Some(3) && !crate::link::generic::cubic_is_smooth(f3) {
        return Err(OracleError::NotSmooth(
            "cubic has (or may have) a singular point".into(),
        ));
    }
    let fjet = f3.to_jet(u32::MAX - 1);
    // Collect the 6 facets of the cube in (y, z, t).
    let mut crossing_id: HashMap<(VKey, VKey), usize> = HashMap::new();
    let mut crossing_keys: Vec<(VKey, VKey)> = Vec::new();
    let mut segments: Vec<(usize, usize)> = Vec::new();
    let mut sign_cache: HashMap<VKey, bool> = HashMap::new();
    let mut sign_of = |k: VKey| -> bool {
        *sign_cache
            .entry(k)
            .or_insert_with(|| vertex_sign(&fjet, res, &k))
    };
    for axis in 0..3usize {
        for side in [0u32, 1] {
            let pinned = if side == 1 { res } else { 0 };
            let free: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
            let vkey = |i: u32, j: u32| -> VKey {
                let mut k = [0u32; 3];
                k[axis] = pinned;
                k[free[0]] = i;
                k[free[1]] = j;
                k
            };
            for i in 0..res {
                for j in 0..res {
                    // Two triangles per cell, split along the main diagonal
                    // (invariant under full negation of the lattice).
                    let quad = [
                        vkey(i, j),
                        vkey(i + 1, j),
                        vkey(i + 1, j + 1),
                        vkey(i, j + 1),
                    ];
                    for tri in [[quad[0], quad[1], quad[2]], [quad[0], quad[2], quad[3]]] {
                        let signs = [sign_of(tri[0]), sign_of(tri[1]), sign_of(tri[2])];
                        let mut crossings: Vec<usize> = Vec::with_capacity(2);
                        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                            if signs[a] != signs[b] {
                                let (ka, kb) = if tri[a] <= tri[b] {
                                    (tri[a], tri[b])
                                } else {
                                    (tri[b], tri[a])
                                };
                                let next = crossing_keys.len();
                                let id =
                                    *crossing_id.entry((ka, kb)).or_insert_with(|| {
                                        crossing_keys.push((ka, kb));
                                        next
                                    });
                                crossings.push(id);
                            }
                        }
                        match crossings.len() {
                            0 => {}
                            2 => segments.push((crossings[0], crossings[1])),
                            n => {
                                return Err(OracleError::NotSmooth(format!(
                                    "{n} crossings in one triangle"
                                )))
                            }
                        }
                    }
                }
            }
        }
    }
    if crossing_keys.is_empty() {
        return Ok(0);
    }
    let mut uf = UnionFind::new(crossing_keys.len());
    for (a, b) in &segments {
        uf.union(*a, *b);
    }
    // Identify antipodal crossing edges; negation maps crossing edges to
    // crossing edges exactly because the triangulation is symmetric.
    for idx in 0..crossing_keys.len() {
        let (a, b) = crossing_keys[idx];
        let (na, nb) = (antipode(res, &a), antipode(res, &b));
        let akey = if na <= nb { (na, nb) } else { (nb, na) };
        match crossing_id.get(&akey) {
            Some(&other) => uf.union(idx, other),
            None => {
                return Err(OracleError::NotSmooth(
                    "antipodal image of a crossing edge is not a crossing edge".into(),
                ))
            }
        }
    }
    let mut roots: Vec<usize> = (0..crossing_keys.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// Convenience entry taking the cubic as a jet in (y, z, t).
pub fn projective_components_of_jet(
    f3: &crate::jet::Jet,
    resolution: u32,
) -> Result<usize, OracleError> {
    let tri = TriPoly::from_jet(f3)
        .ok_or_else(|| OracleError::NotSmooth("form involves the variable x".into()))?;
    projective_curve_components(&tri, resolution)
}
