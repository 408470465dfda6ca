//! Link topology of classified singularities: exact surface descriptors from
//! the classification tables and generic corollaries, or a reduction report
//! when no exact route applies.

pub mod cd4_yzt;
pub mod ce6_z2t2;
pub mod cone;
pub mod generic;
pub mod surface;

pub use cd4_yzt::{link_cd4_yzt, OctahedralElement};
pub use ce6_z2t2::link_ce6_z2t2;
pub use cone::{tangent_cone_report, DuVal2Tag, ReductionReport, SingularLocus};
pub use generic::{link_cd4_generic, link_cdgt4_generic, link_ce_generic};
pub use surface::{Surface, SurfaceDescriptor};

use crate::classify::{CaseTag, ClassParts, Family, SingularityClass};
use crate::plane::{binary_form_report, BranchReport, Sign};
use num_traits::Zero;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("generic-case hypotheses fail: {0}")]
    NotGeneric(String),
    #[error("inconsistent classification data: {0}")]
    InternalContractViolation(String),
    #[error("decision not visible at the working truncation: {0}")]
    TruncationInconclusive(String),
    #[error("input was not classified as a cDV family: {0}")]
    NotClassified(String),
}

/// How an exact link was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum LinkMethod {
    SmoothPoint,
    CaTable,
    Cd4GenericCorollary,
    CdGt4Corollary,
    CeGenericCorollary,
    Cd4YztExample,
    Ce6Z2t2Example,
    OddIndexCover,
    EvenIndexAssembly,
}

impl LinkMethod {
    pub fn provenance(self) -> &'static str {
        match self {
            LinkMethod::SmoothPoint => "smooth point: link is the 2-sphere",
            LinkMethod::CaTable => "cA link table",
            LinkMethod::Cd4GenericCorollary => "generic cD4 corollary (smooth cubic cone)",
            LinkMethod::CdGt4Corollary => "generic cD>4 corollary (spread binary form)",
            LinkMethod::CeGenericCorollary => "generic cE corollary (cone over R^3 graph)",
            LinkMethod::Cd4YztExample => "cD4 yzt smoothing combinatorics",
            LinkMethod::Ce6Z2t2Example => "cE6 z^2 t^2 half-axis analysis",
            LinkMethod::OddIndexCover => "odd-index cover homeomorphism",
            LinkMethod::EvenIndexAssembly => "even-index quotient assembly",
        }
    }
}

/// Link of the real points, exactly or as a reduction report.
#[derive(Debug, Clone)]
pub enum LinkResult {
    Exact {
        descriptor: SurfaceDescriptor,
        method: LinkMethod,
    },
    Partial {
        report: ReductionReport,
        /// Optional sampled estimate: component count and Euler numbers.
        estimate: Option<(usize, Vec<i64>)>,
    },
}

impl LinkResult {
    pub fn exact(descriptor: SurfaceDescriptor, method: LinkMethod) -> LinkResult {
        LinkResult::Exact { descriptor, method }
    }

    pub fn descriptor(&self) -> Option<&SurfaceDescriptor> {
        match self {
            LinkResult::Exact { descriptor, .. } => Some(descriptor),
            LinkResult::Partial { .. } => None,
        }
    }
}

/// Link of a cA-family germ from its branch report, per the table: the sign
/// data of the plane residual determines everything.
pub fn link_ca(
    class: &SingularityClass,
    br: &BranchReport,
) -> Result<SurfaceDescriptor, LinkError> {
    if class.family == Family::CA0 {
        return Ok(SurfaceDescriptor::single(Surface::sphere()));
    }
    if !class.family.is_ca() {
        return Err(LinkError::InternalContractViolation(format!(
            "link_ca on family {}",
            class.family.name()
        )));
    }
    let quad = class.quadratic.as_ref().ok_or_else(|| {
        LinkError::InternalContractViolation("cA class without quadratic data".into())
    })?;
    if let Some(stored) = &class.branch {
        if stored.crossings != br.crossings || stored.m != br.m {
            return Err(LinkError::InternalContractViolation(
                "branch report does not match the classification".into(),
            ));
        }
    }
    let plus = quad.positive >= 2;
    let descriptor = if plus {
        if br.crossings == 0 {
            match br.definite_sign {
                Some(Sign::Plus) => SurfaceDescriptor::empty(),
                Some(Sign::Minus) => SurfaceDescriptor::single(Surface::torus()),
                None => {
                    return Err(LinkError::InternalContractViolation(
                        "no crossings but indefinite sign".into(),
                    ))
                }
            }
        } else {
            SurfaceDescriptor::spheres(br.m)
        }
    } else if br.crossings == 0 {
        SurfaceDescriptor::spheres(2)
    } else {
        SurfaceDescriptor::single(Surface::genus(br.m as u32 - 1))
    };
    Ok(descriptor)
}

/// Assemble the link of a classified hypersurface germ: exact when a table
/// or corollary applies, otherwise a reduction report.
///
/// `projective_resolution` is the sampling resolution used for the one
/// numeric ingredient of the generic cD4 route (the component count of a
/// smooth plane cubic).
pub fn assemble_link(
    class: &SingularityClass,
    projective_resolution: u32,
) -> Result<LinkResult, LinkError> {
    match class.family {
        Family::NotCDV => Err(LinkError::NotClassified(class.case.describe())),
        Family::CA0 => Ok(LinkResult::exact(
            SurfaceDescriptor::single(Surface::sphere()),
            LinkMethod::SmoothPoint,
        )),
        Family::CA1 | Family::CA => match (&class.branch, &class.case) {
            (Some(br), _) => {
                let d = link_ca(class, br)?;
                debug_assert!(d.all_orientable());
                Ok(LinkResult::exact(d, LinkMethod::CaTable))
            }
            (None, CaseTag::CaUnstable) => Ok(LinkResult::Partial {
                report: cone::unstable_ca_report(class),
                estimate: None,
            }),
            (None, _) => Err(LinkError::InternalContractViolation(
                "cA class without branch data".into(),
            )),
        },
        Family::CD4 => assemble_cd4(class, projective_resolution),
        Family::CD => assemble_cdgt4(class),
        Family::CE6 | Family::CE7 | Family::CE8 => assemble_ce(class),
    }
}

fn assemble_cd4(
    class: &SingularityClass,
    projective_resolution: u32,
) -> Result<LinkResult, LinkError> {
    let ClassParts::Cd4 { f3, residual } = &class.parts else {
        return Err(LinkError::InternalContractViolation(
            "cD4 class without cubic data".into(),
        ));
    };
    // The triangle case: cubic supported on yzt exactly.
    if let Some(joins) = generic::yzt_joins(f3, residual) {
        match joins {
            Ok(joins) => {
                return Ok(LinkResult::exact(
                    link_cd4_yzt(joins),
                    LinkMethod::Cd4YztExample,
                ));
            }
            Err(reason) => {
                // Signs not determined by the quartic part: fall through to a
                // reduction report carrying the six crossing points.
                let mut report = tangent_cone_report(class)?;
                report.notes.push(reason);
                return Ok(LinkResult::Partial {
                    report,
                    estimate: None,
                });
            }
        }
    }
    match link_cd4_generic(f3, projective_resolution) {
        Ok(d) => Ok(LinkResult::exact(d, LinkMethod::Cd4GenericCorollary)),
        Err(LinkError::NotGeneric(_)) => Ok(LinkResult::Partial {
            report: tangent_cone_report(class)?,
            estimate: None,
        }),
        Err(e) => Err(e),
    }
}

fn assemble_cdgt4(class: &SingularityClass) -> Result<LinkResult, LinkError> {
    let ClassParts::CdGt4 { a, r, h } = &class.parts else {
        return Err(LinkError::InternalContractViolation(
            "cD>4 class without form data".into(),
        ));
    };
    let s = h.multiplicity();
    let cone_is_generic = a.is_zero() || s.is_some_and(|s| 2 * *r > s + 1);
    if cone_is_generic {
        if let Some(s) = s {
            let hs = h.homogeneous_part(s);
            let report = binary_form_report(&hs)
                .map_err(|e| LinkError::InternalContractViolation(e.to_string()))?;
            match link_cdgt4_generic(&report) {
                Ok(d) => return Ok(LinkResult::exact(d, LinkMethod::CdGt4Corollary)),
                Err(LinkError::NotGeneric(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(LinkResult::Partial {
        report: tangent_cone_report(class)?,
        estimate: None,
    })
}

fn assemble_ce(class: &SingularityClass) -> Result<LinkResult, LinkError> {
    let ClassParts::Ce { g, h } = &class.parts else {
        return Err(LinkError::InternalContractViolation(
            "cE class without form data".into(),
        ));
    };
    match class.family {
        Family::CE6 => {
            let h4 = h.homogeneous_part(4);
            let report = binary_form_report(&h4)
                .map_err(|e| LinkError::InternalContractViolation(e.to_string()))?;
            if report.squarefree {
                let d = link_ce_generic();
                return Ok(LinkResult::exact(d, LinkMethod::CeGenericCorollary));
            }
            // The z^2 t^2 worked example.
            if h4.terms().all(|(&(az, bt), _)| (az, bt) == (2, 2)) {
                match link_ce6_z2t2(g, h, class.truncation) {
                    Ok(d) => return Ok(LinkResult::exact(d, LinkMethod::Ce6Z2t2Example)),
                    Err(LinkError::NotGeneric(_)) | Err(LinkError::TruncationInconclusive(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(LinkResult::Partial {
                report: tangent_cone_report(class)?,
                estimate: None,
            })
        }
        Family::CE7 => Ok(LinkResult::Partial {
            report: tangent_cone_report(class)?,
            estimate: None,
        }),
        Family::CE8 => {
            let h5 = h.homogeneous_part(5);
            let report = binary_form_report(&h5)
                .map_err(|e| LinkError::InternalContractViolation(e.to_string()))?;
            if report.squarefree {
                return Ok(LinkResult::exact(
                    link_ce_generic(),
                    LinkMethod::CeGenericCorollary,
                ));
            }
            Ok(LinkResult::Partial {
                report: tangent_cone_report(class)?,
                estimate: None,
            })
        }
        _ => unreachable!(),
    }
}
