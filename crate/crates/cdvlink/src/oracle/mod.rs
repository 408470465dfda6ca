//! Floating-point verification oracle.
//!
//! The link of a germ is sampled on a small 3-sphere, modeled as the radially
//! normalized boundary of the 4-cube, triangulated into tetrahedra; the zero
//! surface is extracted by linear interpolation, components are collected by
//! union-find, and each component reports its Euler characteristic V - E + F.
//! Borderline vertex signs are settled by exact rational arithmetic, so the
//! sampled combinatorics never depends on floating-point noise.

mod grid;
mod projective;

pub use grid::{match_components, sample_link, ComponentOrbits, SampledComponent, SampledLink};
pub use projective::{projective_components_of_jet, projective_curve_components};

use crate::jet::Rat;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("mesh extraction produced a non-manifold edge; resolution too coarse: {0}")]
    ResolutionTooCoarse(String),
    #[error("sampled variety appears singular: {0}")]
    NotSmooth(String),
    #[error("sphere sampling failed after retries: {0}")]
    SamplingFailed(String),
}

/// Sampling parameters. Identical configurations give bit-identical results.
#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    /// Sphere radius (dyadic rational).
    pub epsilon: Rat,
    /// Grid cells per axis on each cube facet; at least 16.
    pub resolution: u32,
    /// Below this magnitude a floating-point vertex value is re-evaluated
    /// exactly.
    pub tolerance: f64,
    /// Optional anisotropic radius exponents u_i: the sampling level set is
    /// sum x_i^(2 u_i) = epsilon^2 instead of the round sphere.
    pub weights: Option<[u32; 4]>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            epsilon: crate::jet::rat(1, 2),
            resolution: 64,
            tolerance: 1e-12,
            weights: None,
        }
    }
}

impl GridConfig {
    pub fn with_resolution(resolution: u32) -> GridConfig {
        GridConfig {
            resolution,
            ..Default::default()
        }
    }
}
