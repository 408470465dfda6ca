//! Closed-surface descriptors for links of real singularities.

use std::fmt;

/// A closed connected surface: orientable of genus g, or nonorientable with
/// k crosscaps (the connected sum of the sphere with k projective planes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Surface {
    Orientable { genus: u32 },
    NonOrientable { crosscaps: u32 },
}

impl Surface {
    pub fn sphere() -> Surface {
        Surface::Orientable { genus: 0 }
    }

    pub fn torus() -> Surface {
        Surface::Orientable { genus: 1 }
    }

    pub fn genus(g: u32) -> Surface {
        Surface::Orientable { genus: g }
    }

    pub fn projective_plane() -> Surface {
        Surface::NonOrientable { crosscaps: 1 }
    }

    pub fn klein_bottle() -> Surface {
        Surface::NonOrientable { crosscaps: 2 }
    }

    pub fn crosscaps(k: u32) -> Surface {
        assert!(k >= 1);
        Surface::NonOrientable { crosscaps: k }
    }

    pub fn euler_characteristic(&self) -> i64 {
        match self {
            Surface::Orientable { genus } => 2 - 2 * *genus as i64,
            Surface::NonOrientable { crosscaps } => 2 - *crosscaps as i64,
        }
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, Surface::Orientable { .. })
    }

    /// The closed surface with the given Euler characteristic.
    pub fn from_euler(chi: i64, orientable: bool) -> Option<Surface> {
        if orientable {
            if chi > 2 || chi % 2 != 0 {
                return None;
            }
            Some(Surface::Orientable {
                genus: ((2 - chi) / 2) as u32,
            })
        } else {
            if chi >= 2 {
                return None;
            }
            Some(Surface::NonOrientable {
                crosscaps: (2 - chi) as u32,
            })
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Orientable { genus: 0 } => write!(f, "S^2"),
            Surface::Orientable { genus: 1 } => write!(f, "T^2"),
            Surface::Orientable { genus } => write!(f, "M{genus}"),
            Surface::NonOrientable { crosscaps: 1 } => write!(f, "RP^2"),
            Surface::NonOrientable { crosscaps: 2 } => write!(f, "Klein"),
            Surface::NonOrientable { crosscaps } => write!(f, "K{crosscaps}"),
        }
    }
}

/// Multiset of closed surfaces, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, serde::Serialize)]
pub struct SurfaceDescriptor {
    components: Vec<Surface>,
}

impl SurfaceDescriptor {
    pub fn empty() -> SurfaceDescriptor {
        SurfaceDescriptor::default()
    }

    pub fn from_components(it: impl IntoIterator<Item = Surface>) -> SurfaceDescriptor {
        let mut components: Vec<Surface> = it.into_iter().collect();
        components.sort();
        SurfaceDescriptor { components }
    }

    pub fn single(s: Surface) -> SurfaceDescriptor {
        SurfaceDescriptor {
            components: vec![s],
        }
    }

    pub fn spheres(count: usize) -> SurfaceDescriptor {
        SurfaceDescriptor::from_components(std::iter::repeat_n(Surface::sphere(), count))
    }

    pub fn push(&mut self, s: Surface) {
        self.components.push(s);
        self.components.sort();
    }

    pub fn extend(&mut self, other: &SurfaceDescriptor) {
        self.components.extend(other.components.iter().copied());
        self.components.sort();
    }

    pub fn components(&self) -> &[Surface] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn euler_total(&self) -> i64 {
        self.components
            .iter()
            .map(|s| s.euler_characteristic())
            .sum()
    }

    pub fn all_orientable(&self) -> bool {
        self.components.iter().all(|s| s.is_orientable())
    }

    /// Sorted Euler characteristics, for oracle comparison.
    pub fn euler_multiset(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .components
            .iter()
            .map(|s| s.euler_characteristic())
            .collect();
        v.sort();
        v
    }
}

impl fmt::Display for SurfaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "empty");
        }
        let mut first = true;
        for s in &self.components {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_values() {
        assert_eq!(Surface::sphere().euler_characteristic(), 2);
        assert_eq!(Surface::torus().euler_characteristic(), 0);
        assert_eq!(Surface::genus(2).euler_characteristic(), -2);
        assert_eq!(Surface::projective_plane().euler_characteristic(), 1);
        assert_eq!(Surface::klein_bottle().euler_characteristic(), 0);
    }

    #[test]
    fn canonical_equality() {
        let a = SurfaceDescriptor::from_components([Surface::torus(), Surface::sphere()]);
        let b = SurfaceDescriptor::from_components([Surface::sphere(), Surface::torus()]);
        assert_eq!(a, b);
        assert_eq!(a.euler_total(), 2);
    }

    #[test]
    fn from_euler_round_trip() {
        for g in 0..5 {
            let s = Surface::genus(g);
            assert_eq!(
                Surface::from_euler(s.euler_characteristic(), true),
                Some(s)
            );
        }
        for k in 1..5 {
            let s = Surface::crosscaps(k);
            assert_eq!(
                Surface::from_euler(s.euler_characteristic(), false),
                Some(s)
            );
        }
    }
}
