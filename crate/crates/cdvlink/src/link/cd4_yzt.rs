//! Links of x^2 + yzt + (higher order): combinatorial smoothing of the three
//! great circles on the 2-sphere.
//!
//! The cone curve yzt = 0 meets the sphere in three great circles crossing at
//! the six axis points. A deformation smooths each crossing one of two ways:
//! either the two negative octants join through the crossing or the two
//! positive ones do. The link is the double of the negative region, so each
//! connected negative region with b boundary circles contributes a closed
//! orientable surface of genus b - 1.

use super::surface::{Surface, SurfaceDescriptor};

/// Crossing points of the coordinate great circles, in the fixed order used
/// by the smoothing vector.
pub const VERTEX_ORDER: [(usize, i8); 6] = [
    (0, 1),  // +e_y
    (0, -1), // -e_y
    (1, 1),  // +e_z
    (1, -1), // -e_z
    (2, 1),  // +e_t
    (2, -1), // -e_t
];

/// The four negative octants of yzt, encoded by their coordinate signs.
const NEG_FACES: [[i8; 3]; 4] = [
    [1, 1, -1],  // A
    [1, -1, 1],  // B
    [-1, 1, 1],  // C
    [-1, -1, -1], // D
];

/// The pair of negative faces meeting at a crossing vertex.
fn negative_pair(vertex: (usize, i8)) -> (usize, usize) {
    let (axis, side) = vertex;
    let mut found = Vec::with_capacity(2);
    for (i, f) in NEG_FACES.iter().enumerate() {
        if f[axis] == side {
            found.push(i);
        }
    }
    debug_assert_eq!(found.len(), 2);
    (found[0], found[1])
}

/// Link of x^2 + yzt + f(>=4) for the given smoothing: joins[k] is true when
/// the two negative octants connect through the k-th crossing of
/// [`VERTEX_ORDER`]. Total on all 64 inputs.
pub fn link_cd4_yzt(joins: [bool; 6]) -> SurfaceDescriptor {
    // Union-find over the four negative faces.
    let mut parent = [0usize, 1, 2, 3];
    fn find(parent: &mut [usize; 4], x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for (k, &v) in VERTEX_ORDER.iter().enumerate() {
        if joins[k] {
            let (a, b) = negative_pair(v);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    // chi per component: faces minus joining bands.
    let mut faces = [0i64; 4];
    let mut bands = [0i64; 4];
    for f in 0..4 {
        let r = find(&mut parent, f);
        faces[r] += 1;
    }
    for (k, &v) in VERTEX_ORDER.iter().enumerate() {
        if joins[k] {
            let (a, _) = negative_pair(v);
            let r = find(&mut parent, a);
            bands[r] += 1;
        }
    }
    let mut components = Vec::new();
    for r in 0..4 {
        if faces[r] == 0 {
            continue;
        }
        let chi = faces[r] - bands[r];
        // Planar region on the sphere: boundary circles 2 - chi, double has
        // genus (2 - chi) - 1 = 1 - chi.
        let genus = 1 - chi;
        debug_assert!(genus >= 0);
        components.push(Surface::genus(genus as u32));
    }
    SurfaceDescriptor::from_components(components)
}

/// A signed permutation of the axes (y, z, t) acting on the six crossings.
///
/// Elements preserving the sign of yzt (sign product +1) are exactly the
/// rotations of the octahedron; they preserve the variety's normal form and
/// the link is invariant under them. Sign-reversing elements change the
/// leading cubic to -yzt, a different variety, so no link invariance is
/// claimed for them.
#[derive(Debug, Clone, Copy)]
pub struct OctahedralElement {
    pub perm: [usize; 3],
    pub signs: [i8; 3],
}

impl OctahedralElement {
    /// All 48 signed permutations.
    pub fn all() -> Vec<OctahedralElement> {
        let mut out = Vec::with_capacity(48);
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for perm in perms {
            for mask in 0..8u8 {
                let signs = [
                    if mask & 1 != 0 { -1 } else { 1 },
                    if mask & 2 != 0 { -1 } else { 1 },
                    if mask & 4 != 0 { -1 } else { 1 },
                ];
                out.push(OctahedralElement { perm, signs });
            }
        }
        out
    }

    /// The 24 rotations: signed permutations preserving the sign of yzt.
    pub fn rotations() -> Vec<OctahedralElement> {
        OctahedralElement::all()
            .into_iter()
            .filter(|g| !g.flips_sign())
            .collect()
    }

    /// Whether the element maps yzt to -yzt.
    pub fn flips_sign(&self) -> bool {
        self.signs.iter().product::<i8>() == -1
    }

    /// Image of a crossing vertex: e_a goes to signs[a] e_{perm[a]}.
    fn map_vertex(&self, v: (usize, i8)) -> (usize, i8) {
        (self.perm[v.0], v.1 * self.signs[v.0])
    }

    /// Relabel a smoothing configuration along the vertex images.
    pub fn act(&self, joins: [bool; 6]) -> [bool; 6] {
        let mut out = [false; 6];
        for (k, &v) in VERTEX_ORDER.iter().enumerate() {
            let image = self.map_vertex(v);
            let slot = VERTEX_ORDER
                .iter()
                .position(|&w| w == image)
                .expect("vertex set is closed under the action");
            out[slot] = joins[k];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn joins_from_mask(mask: u8) -> [bool; 6] {
        let mut j = [false; 6];
        for (k, slot) in j.iter_mut().enumerate() {
            *slot = mask & (1 << k) != 0;
        }
        j
    }

    #[test]
    fn all_positive_joins_give_four_spheres() {
        assert_eq!(link_cd4_yzt([false; 6]), SurfaceDescriptor::spheres(4));
    }

    #[test]
    fn single_negative_join_gives_three_spheres() {
        let mut j = [false; 6];
        j[0] = true;
        assert_eq!(link_cd4_yzt(j), SurfaceDescriptor::spheres(3));
    }

    #[test]
    fn disc_configuration_gives_sphere() {
        // Three joins forming a spanning tree of the four faces: one disc.
        // +e_y joins {A,B}, +e_z joins {A,C}, -e_t joins {A,D}.
        let mut j = [false; 6];
        j[0] = true;
        j[2] = true;
        j[5] = true;
        assert_eq!(
            link_cd4_yzt(j),
            SurfaceDescriptor::single(Surface::sphere())
        );
    }

    #[test]
    fn triangle_gives_torus_plus_sphere() {
        // +e_y {A,B}, +e_z {A,C}, +e_t {B,C}: a 3-cycle plus the isolated D.
        let mut j = [false; 6];
        j[0] = true;
        j[2] = true;
        j[4] = true;
        assert_eq!(
            link_cd4_yzt(j),
            SurfaceDescriptor::from_components([Surface::torus(), Surface::sphere()])
        );
    }

    #[test]
    fn five_joins_give_genus_two() {
        let mut j = [true; 6];
        j[4] = false;
        assert_eq!(
            link_cd4_yzt(j),
            SurfaceDescriptor::single(Surface::genus(2))
        );
    }

    #[test]
    fn full_image_octahedral_invariance() {
        let mut image = BTreeSet::new();
        for mask in 0..64u8 {
            let joins = joins_from_mask(mask);
            let d = link_cd4_yzt(joins);
            for g in OctahedralElement::rotations() {
                assert_eq!(
                    link_cd4_yzt(g.act(joins)),
                    d,
                    "octahedral rotation changed the link for mask {mask:#08b}"
                );
            }
            image.insert(format!("{d}"));
        }
        // The true image: the seven types of the classical enumeration plus
        // the genus-3 double of the all-joined negative region.
        let expect: BTreeSet<String> = [
            "S^2",
            "S^2 + S^2",
            "S^2 + S^2 + S^2",
            "S^2 + S^2 + S^2 + S^2",
            "T^2",
            "S^2 + T^2",
            "M2",
            "M3",
        ]
        .into_iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(image, expect);
    }
}
