//! Quotient links: odd-index passthrough, and the even-index assembly from
//! the cover, the companion, and the tau-orbit structure of their links.

use super::{companion, not_isolated_check, CoverShape, QuotientClass, QuotientError};
use crate::classify::{ClassifyOptions, SingularityClass};
use crate::jet::{Jet, Rat};
use crate::link::{assemble_link, LinkMethod, LinkResult, Surface, SurfaceDescriptor};
use crate::oracle::{match_components, sample_link, GridConfig};
use crate::plane::{circle_sign_arcs, branch_report, Sign};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy)]
pub struct QuotientOptions {
    pub classify: ClassifyOptions,
    /// Sampling resolution for the generic cD4 component count.
    pub projective_resolution: u32,
    /// Sampling resolution for the numeric orbit fallback.
    pub fallback_resolution: u32,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            classify: ClassifyOptions::default(),
            projective_resolution: 64,
            fallback_resolution: 32,
        }
    }
}

/// Everything the quotient pipeline produced.
#[derive(Debug, Clone)]
pub struct QuotientLinkOutcome {
    pub quotient: LinkResult,
    pub cover_link: LinkResult,
    pub companion: Option<Jet>,
    pub companion_class: Option<SingularityClass>,
    pub companion_link: Option<LinkResult>,
    pub notes: Vec<String>,
}

/// Orbit data of one side's link components under tau.
enum SideOrbits {
    /// Surfaces of fixed components and of one representative per swapped
    /// pair, cover-side surface types.
    Symbolic {
        fixed: Vec<Surface>,
        pairs: Vec<Surface>,
    },
    /// Could not be determined symbolically.
    Unknown,
}

/// The quotient piece of a tau-fixed cover component: half the Euler number,
/// nonorientable exactly when the orientation parity is odd.
fn fixed_piece(surface: Surface, parity_odd: bool) -> Result<Surface, String> {
    let chi = surface.euler_characteristic();
    if chi % 2 != 0 {
        return Err(format!("fixed component has odd Euler number {chi}"));
    }
    let half = chi / 2;
    if parity_odd {
        Surface::from_euler(half, false)
            .ok_or_else(|| format!("no nonorientable surface with chi = {half}"))
    } else {
        Surface::from_euler(half, true)
            .ok_or_else(|| format!("no orientable surface with chi = {half}; parity says orientable"))
    }
}

/// Symbolic tau-orbit analysis for the row-shaped cA-type covers.
fn symbolic_orbits(
    shape: &CoverShape,
    action: &super::GradedAction,
) -> Result<SideOrbits, QuotientError> {
    let tau = action.tau;
    match shape {
        CoverShape::Smooth => Ok(SideOrbits::Symbolic {
            fixed: vec![Surface::sphere()],
            pairs: vec![],
        }),
        CoverShape::General => Ok(SideOrbits::Unknown),
        CoverShape::CaHyperbolic { plane: _, f } => {
            let br = match branch_report(f) {
                Ok(br) => br,
                Err(_) => return Ok(SideOrbits::Unknown),
            };
            if br.crossings == 0 {
                // Two sheets split by the sign of x; they swap exactly when
                // tau negates x (forced for a graded hyperbolic pair).
                let swap = tau[0] == -1;
                if swap {
                    Ok(SideOrbits::Symbolic {
                        fixed: vec![],
                        pairs: vec![Surface::sphere()],
                    })
                } else {
                    Ok(SideOrbits::Symbolic {
                        fixed: vec![Surface::sphere(), Surface::sphere()],
                        pairs: vec![],
                    })
                }
            } else {
                // Connected link of genus m - 1.
                Ok(SideOrbits::Symbolic {
                    fixed: vec![Surface::genus(br.m as u32 - 1)],
                    pairs: vec![],
                })
            }
        }
        CoverShape::CaDiagonal { front, plane, f } => {
            let br = match branch_report(f) {
                Ok(br) => br,
                Err(_) => return Ok(SideOrbits::Unknown),
            };
            let plus = front[0].1.is_positive() && front[1].1.is_positive();
            if plus {
                if br.crossings == 0 {
                    match br.definite_sign {
                        Some(Sign::Plus) => Ok(SideOrbits::Symbolic {
                            fixed: vec![],
                            pairs: vec![],
                        }),
                        Some(Sign::Minus) => Ok(SideOrbits::Symbolic {
                            fixed: vec![Surface::torus()],
                            pairs: vec![],
                        }),
                        None => Ok(SideOrbits::Unknown),
                    }
                } else {
                    // One sphere per negative arc; tau acts on the plane.
                    let arcs = circle_sign_arcs(f, &br.epsilon_used)
                        .map_err(|e| QuotientError::NotTerminalQuotient(e.to_string()))?;
                    let tp = tau[plane[0].index()];
                    let tq = tau[plane[1].index()];
                    let negative: Vec<usize> = (0..arcs.arcs.len())
                        .filter(|&i| arcs.arcs[i].sign == Sign::Minus)
                        .collect();
                    let mut fixed = 0usize;
                    let mut seen_pairs = 0usize;
                    let mut matched: Vec<Option<usize>> = vec![None; arcs.arcs.len()];
                    for &i in &negative {
                        let sample = &arcs.arcs[i].sample;
                        let image = match (tp, tq) {
                            (1, 1) => Some(sample.clone()),
                            (-1, 1) => invert(sample),
                            (1, -1) => Some(-sample.clone()),
                            (-1, -1) => invert(sample).map(|u| -u),
                            _ => unreachable!(),
                        };
                        let image_arc = match image {
                            Some(u) => arcs.arc_containing(&u),
                            // Sample at u = 0 maps through infinity.
                            None => arcs.arc_at_infinity(),
                        };
                        let Some(j) = image_arc else {
                            return Ok(SideOrbits::Unknown);
                        };
                        if arcs.arcs[j].sign != Sign::Minus {
                            return Ok(SideOrbits::Unknown);
                        }
                        matched[i] = Some(j);
                        if j == i {
                            fixed += 1;
                        }
                    }
                    // Verify the matching is an involution and count pairs.
                    for &i in &negative {
                        let j = matched[i].unwrap();
                        if j != i {
                            if matched.get(j).copied().flatten() != Some(i) {
                                return Ok(SideOrbits::Unknown);
                            }
                            if i < j {
                                seen_pairs += 1;
                            }
                        }
                    }
                    if fixed + 2 * seen_pairs != br.m {
                        return Ok(SideOrbits::Unknown);
                    }
                    Ok(SideOrbits::Symbolic {
                        fixed: vec![Surface::sphere(); fixed],
                        pairs: vec![Surface::sphere(); seen_pairs],
                    })
                }
            } else {
                // Mixed signature.
                if br.crossings == 0 {
                    // Two sheets split by the sign of the positive square's
                    // variable.
                    let swap = tau[front[0].0.index()] == -1;
                    if swap {
                        Ok(SideOrbits::Symbolic {
                            fixed: vec![],
                            pairs: vec![Surface::sphere()],
                        })
                    } else {
                        Ok(SideOrbits::Symbolic {
                            fixed: vec![Surface::sphere(), Surface::sphere()],
                            pairs: vec![],
                        })
                    }
                } else {
                    Ok(SideOrbits::Symbolic {
                        fixed: vec![Surface::genus(br.m as u32 - 1)],
                        pairs: vec![],
                    })
                }
            }
        }
    }
}

/// The circle involution u -> 1/u induced by z -> -z; None at u = 0.
fn invert(u: &Rat) -> Option<Rat> {
    if u.is_zero() {
        None
    } else {
        Some(Rat::from_integer(1.into()) / u.clone())
    }
}

/// Assemble one side's contribution to the quotient link.
fn side_contribution(
    f: &Jet,
    qc: &QuotientClass,
    side_link: &LinkResult,
    opts: &QuotientOptions,
    notes: &mut Vec<String>,
) -> Result<Option<SurfaceDescriptor>, QuotientError> {
    let parity_odd = qc.action.orientation_parity(qc.grade);
    let symbolic = symbolic_orbits(&qc.shape, &qc.action)?;
    let descriptor = side_link.descriptor();
    match (symbolic, descriptor) {
        (SideOrbits::Symbolic { fixed, pairs }, Some(expected)) => {
            // Consistency: fixed + 2 pairs must reproduce the cover link.
            let check = SurfaceDescriptor::from_components(
                fixed
                    .iter()
                    .copied()
                    .chain(pairs.iter().copied())
                    .chain(pairs.iter().copied()),
            );
            if &check != expected {
                notes.push(format!(
                    "symbolic orbit structure ({check}) disagrees with the cover link ({expected})"
                ));
                return Ok(None);
            }
            let mut out = Vec::new();
            for s in fixed {
                match fixed_piece(s, parity_odd) {
                    Ok(p) => out.push(p),
                    Err(e) => {
                        notes.push(e);
                        return Ok(None);
                    }
                }
            }
            out.extend(pairs);
            Ok(Some(SurfaceDescriptor::from_components(out)))
        }
        (SideOrbits::Symbolic { fixed, pairs }, None) => {
            // Cover link itself was Partial; the symbolic orbits alone still
            // determine the quotient side.
            let mut out = Vec::new();
            for s in fixed {
                match fixed_piece(s, parity_odd) {
                    Ok(p) => out.push(p),
                    Err(e) => {
                        notes.push(e);
                        return Ok(None);
                    }
                }
            }
            out.extend(pairs);
            Ok(Some(SurfaceDescriptor::from_components(out)))
        }
        (SideOrbits::Unknown, _) => {
            // Numeric fallback: sample the side and match components.
            let cfg = GridConfig {
                resolution: opts.fallback_resolution,
                ..Default::default()
            };
            let sampled = match sample_link(f, &cfg) {
                Ok(s) => s,
                Err(e) => {
                    notes.push(format!("numeric fallback sampling failed: {e}"));
                    return Ok(None);
                }
            };
            if let Some(expected) = descriptor {
                if sampled.euler_multiset() != expected.euler_multiset() {
                    notes.push(format!(
                        "sampled Euler numbers {:?} disagree with the exact cover link {expected}; \
                         symbolic result not overridden",
                        sampled.euler_multiset()
                    ));
                    return Ok(None);
                }
            }
            let orbits = match match_components(&sampled, qc.action.tau) {
                Ok(o) => o,
                Err(e) => {
                    notes.push(format!("component matching failed: {e}"));
                    return Ok(None);
                }
            };
            let mut out = Vec::new();
            for &i in &orbits.fixed {
                let chi = sampled.components[i].euler;
                let surface = match Surface::from_euler(chi, true) {
                    Some(s) => s,
                    None => {
                        notes.push(format!("fixed component with chi = {chi}"));
                        return Ok(None);
                    }
                };
                match fixed_piece(surface, parity_odd) {
                    Ok(p) => out.push(p),
                    Err(e) => {
                        notes.push(e);
                        return Ok(None);
                    }
                }
            }
            for &(i, j) in &orbits.swapped {
                let (ca, cb) = (
                    sampled.components[i].euler,
                    sampled.components[j].euler,
                );
                if ca != cb {
                    notes.push("swapped components with different Euler numbers".into());
                    return Ok(None);
                }
                match Surface::from_euler(ca, true) {
                    Some(s) => out.push(s),
                    None => {
                        notes.push(format!("swapped component with chi = {ca}"));
                        return Ok(None);
                    }
                }
            }
            Ok(Some(SurfaceDescriptor::from_components(out)))
        }
    }
}

/// Compute the link of a validated quotient.
///
/// Odd index: the cover's link, unchanged. Even index: the union of the
/// tau-quotients of the cover link and the companion link, with the orbit
/// structure determined symbolically for the cA-type rows and by numeric
/// component matching otherwise.
pub fn quotient_link(
    _f: &Jet,
    qc: &QuotientClass,
    opts: &QuotientOptions,
) -> Result<QuotientLinkOutcome, QuotientError> {
    let cover_link = assemble_link(&qc.cover_class, opts.projective_resolution)
        .map_err(|e| QuotientError::NotTerminalQuotient(e.to_string()))?;
    let mut notes = Vec::new();
    if !qc.action.is_even() {
        // The projection from the cover's real points is a homeomorphism.
        if let LinkResult::Exact { descriptor, .. } = &cover_link {
            not_isolated_check(descriptor)?;
        }
        return Ok(QuotientLinkOutcome {
            quotient: cover_link.clone(),
            cover_link,
            companion: None,
            companion_class: None,
            companion_link: None,
            notes,
        });
    }
    // Even index: companion side.
    let comp = companion(&qc.shaped, &qc.action)?;
    let comp_qc = super::validate_action(&comp, &qc.action, opts.classify)?;
    let comp_link = assemble_link(&comp_qc.cover_class, opts.projective_resolution)
        .map_err(|e| QuotientError::NotTerminalQuotient(e.to_string()))?;

    let side_a = side_contribution(&qc.shaped, qc, &cover_link, opts, &mut notes)?;
    let side_b = side_contribution(&comp_qc.shaped, &comp_qc, &comp_link, opts, &mut notes)?;
    let quotient = match (side_a, side_b) {
        (Some(a), Some(b)) => {
            let mut d = a.clone();
            d.extend(&b);
            // Euler bookkeeping: chi(quotient) = (chi(cover) + chi(comp)) / 2
            // for the free involution.
            if let (Some(ca), Some(cb)) = (cover_link.descriptor(), comp_link.descriptor()) {
                let lhs = 2 * d.euler_total();
                let rhs = ca.euler_total() + cb.euler_total();
                if lhs != rhs {
                    return Err(QuotientError::NotTerminalQuotient(format!(
                        "Euler bookkeeping failed: 2 * {} != {} + {}",
                        d.euler_total(),
                        ca.euler_total(),
                        cb.euler_total()
                    )));
                }
            }
            not_isolated_check(&d)?;
            LinkResult::Exact {
                descriptor: d,
                method: LinkMethod::EvenIndexAssembly,
            }
        }
        _ => {
            // Partial: keep whichever report exists.
            let report = match (&cover_link, &comp_link) {
                (LinkResult::Partial { report, .. }, _) => report.clone(),
                (_, LinkResult::Partial { report, .. }) => report.clone(),
                (LinkResult::Exact { .. }, LinkResult::Exact { .. }) => {
                    crate::link::cone::unstable_ca_report(&qc.cover_class)
                }
            };
            notes.push("tau-orbit structure undetermined; returning a partial result".into());
            LinkResult::Partial {
                report,
                estimate: None,
            }
        }
    };
    Ok(QuotientLinkOutcome {
        quotient,
        cover_link,
        companion: Some(comp),
        companion_class: Some(comp_qc.cover_class),
        companion_link: Some(comp_link),
        notes,
    })
}

