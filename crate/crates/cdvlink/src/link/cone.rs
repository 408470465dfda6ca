//! Weighted tangent cones and reduction reports for the non-generic cD and
//! cE cases: when no exact table applies, the link question is reduced to the
//! cone plus local plane-curve data along its singular locus.

use super::generic::cubic_is_smooth;
use super::LinkError;
use crate::classify::{CaseTag, ClassParts, Family, SingularityClass};
use crate::jet::{Jet, WeightVector};
use crate::plane::{binary_form_report, BivarPoly};
use num_traits::Zero;
use std::fmt;

/// Local two-variable singularity tags occurring along the cone curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DuVal2Tag {
    /// u^2 +- v^(n+1).
    A { n: u32 },
    /// u^2 v +- v^(n-1).
    D { n: u32 },
    /// u^3 + v^4.
    E6,
    /// u^3 +- u v^3.
    E7,
    /// u^3 + v^5.
    E8,
}

impl fmt::Display for DuVal2Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DuVal2Tag::A { n } => write!(f, "A{n}"),
            DuVal2Tag::D { n } => write!(f, "D{n}"),
            DuVal2Tag::E6 => write!(f, "E6"),
            DuVal2Tag::E7 => write!(f, "E7"),
            DuVal2Tag::E8 => write!(f, "E8"),
        }
    }
}

/// A singular locus of the cone curve with its local plane-curve type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocus {
    pub location: String,
    pub local_type: Option<DuVal2Tag>,
}

/// Reduction data for a case without an exact link formula.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub family: Family,
    /// Integral weights whose lowest piece is the cone.
    pub weights: [u32; 4],
    /// The weighted tangent cone of the witness.
    pub cone: Jet,
    pub loci: Vec<SingularLocus>,
    /// True when the cone's curve has no singular locus to report, so the
    /// deformation is topologically trivial.
    pub generic_cone: bool,
    pub notes: Vec<String>,
}

/// The local type of the cone curve transverse to a k-fold real linear
/// factor, for the cE cones y^3 + (form).
fn ce_local_tag(k: u32) -> DuVal2Tag {
    match k {
        2 => DuVal2Tag::A { n: 2 },
        3 => DuVal2Tag::D { n: 4 },
        4 => DuVal2Tag::E6,
        5 => DuVal2Tag::E8,
        _ => DuVal2Tag::A { n: 2 },
    }
}

/// The local type along a k-fold factor of g_3 in the cE7 cone y(y^2 + g_3).
fn ce7_local_tag(k: u32) -> DuVal2Tag {
    match k {
        1 => DuVal2Tag::A { n: 1 },
        2 => DuVal2Tag::D { n: 4 },
        _ => DuVal2Tag::E7,
    }
}

fn multiple_factor_loci(form: &BivarPoly, what: &str, tags: impl Fn(u32) -> DuVal2Tag) -> Vec<SingularLocus> {
    let Ok(report) = binary_form_report(form) else {
        return vec![];
    };
    report
        .multiplicities
        .iter()
        .filter(|&&k| k >= 2)
        .map(|&k| SingularLocus {
            location: format!("real linear factor of {what} with multiplicity {k}"),
            local_type: Some(tags(k)),
        })
        .collect()
}

/// Integral weights realizing the per-family cone table rows.
pub fn cone_weights(class: &SingularityClass) -> Result<WeightVector, LinkError> {
    match (&class.family, &class.parts) {
        (Family::CD4, _) => Ok(WeightVector::new([3, 2, 2, 2])),
        (Family::CD, ClassParts::CdGt4 { a, r, h }) => {
            let s = h.multiplicity();
            let first = a.is_zero() || s.is_some_and(|s| 2 * *r > s + 1);
            if first {
                let s = s.ok_or_else(|| {
                    LinkError::TruncationInconclusive("cD weights need a visible h".into())
                })?;
                Ok(WeightVector::new([s, s - 1, 2, 2]))
            } else {
                // The epsilon-perturbed second weight row, scaled to integers
                // with denominator 2r(2r-1)r.
                let r = *r;
                Ok(WeightVector::new([
                    r * (2 * r - 1),
                    r * (2 * r - 3),
                    4 * r,
                    2 * r + 1,
                ]))
            }
        }
        (Family::CE6, _) => Ok(WeightVector::new([6, 4, 3, 3])),
        (Family::CE7, _) => Ok(WeightVector::new([9, 6, 4, 4])),
        (Family::CE8, _) => Ok(WeightVector::new([15, 10, 6, 6])),
        _ => Err(LinkError::InternalContractViolation(
            "cone weights are defined for the cD and cE families".into(),
        )),
    }
}

/// Reduction report: weighted tangent cone and the singular loci of its
/// curve, located per family at the multiple real factors of the relevant
/// binary form.
pub fn tangent_cone_report(class: &SingularityClass) -> Result<ReductionReport, LinkError> {
    let weights = cone_weights(class)?;
    let (_, cone) = class
        .witness
        .lowest_weighted_piece(&weights)
        .ok_or_else(|| LinkError::InternalContractViolation("empty witness".into()))?;
    let mut notes = Vec::new();
    let loci = match (&class.family, &class.parts) {
        (Family::CD4, ClassParts::Cd4 { f3, .. }) => {
            let jet = f3.to_jet(4);
            if jet.len() == 1 && !jet.coeff(&crate::jet::mono(0, 1, 1, 1)).is_zero() {
                super::cd4_yzt::VERTEX_ORDER
                    .iter()
                    .map(|&(axis, side)| {
                        let names = ['y', 'z', 't'];
                        SingularLocus {
                            location: format!(
                                "crossing at {}{} axis point",
                                if side > 0 { "+" } else { "-" },
                                names[axis]
                            ),
                            local_type: Some(DuVal2Tag::A { n: 1 }),
                        }
                    })
                    .collect()
            } else if cubic_is_smooth(f3) {
                vec![]
            } else {
                vec![SingularLocus {
                    location: "singular points of the cubic curve (not enumerated)".into(),
                    local_type: None,
                }]
            }
        }
        (Family::CD, ClassParts::CdGt4 { a, r, h }) => {
            let s = h.multiplicity();
            let first = a.is_zero() || s.is_some_and(|s| 2 * *r > s + 1);
            if first {
                let s = s.unwrap();
                let hs = h.homogeneous_part(s);
                let z = BivarPoly::from_terms([((1u32, 0u32), crate::jet::rat_int(1))]);
                multiple_factor_loci(&z.mul(&hs), "z*h_s", |k| DuVal2Tag::A { n: k - 1 })
            } else {
                notes.push("cone x^2 + y^2 z +- y t^r is singular along the z-axis".into());
                vec![SingularLocus {
                    location: "the z-axis".into(),
                    local_type: Some(DuVal2Tag::A { n: 2 * *r - 1 }),
                }]
            }
        }
        (Family::CE6, ClassParts::Ce { h, .. }) => {
            multiple_factor_loci(&h.homogeneous_part(4), "h_4", ce_local_tag)
        }
        (Family::CE7, ClassParts::Ce { g, .. }) => {
            let g3 = g.homogeneous_part(3);
            let Ok(report) = binary_form_report(&g3) else {
                return Err(LinkError::InternalContractViolation(
                    "cE7 with vanishing g_3".into(),
                ));
            };
            report
                .multiplicities
                .iter()
                .map(|&k| SingularLocus {
                    location: format!("real linear factor of g_3 with multiplicity {k}"),
                    local_type: Some(ce7_local_tag(k)),
                })
                .collect()
        }
        (Family::CE8, ClassParts::Ce { h, .. }) => {
            multiple_factor_loci(&h.homogeneous_part(5), "h_5", ce_local_tag)
        }
        _ => {
            return Err(LinkError::InternalContractViolation(
                "reduction report needs cD or cE data".into(),
            ))
        }
    };
    Ok(ReductionReport {
        family: class.family,
        weights: weights.0,
        cone,
        generic_cone: loci.is_empty(),
        loci,
        notes,
    })
}

/// Degenerate report for a cA class whose branch analysis did not stabilize.
pub fn unstable_ca_report(class: &SingularityClass) -> ReductionReport {
    let lowest = class
        .witness
        .homogeneous_part(class.witness.multiplicity().unwrap_or(1));
    ReductionReport {
        family: class.family,
        weights: [1, 1, 1, 1],
        cone: lowest,
        loci: vec![],
        generic_cone: false,
        notes: vec![match &class.case {
            CaseTag::CaUnstable => {
                "circle sign arcs did not stabilize; the residual is likely non-reduced".into()
            }
            other => other.describe(),
        }],
    }
}
