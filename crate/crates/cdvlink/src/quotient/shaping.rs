//! Matching a graded series against the terminal quotient table and shaping
//! it into the row's normal form by graded linear changes.

use super::{
    can_parameter, freeness_check, matches_pattern, CoverShape, GradedAction, QuotientClass,
    QuotientError, QuotientRow,
};
use crate::classify::quadratic::{diagonalize_masked, identity_matrix, quadric_matrix};
use crate::classify::{classify, ClassifyOptions, Family};
use crate::jet::reduce::TransformLog;
use crate::jet::{Jet, Monomial, Rat, Var};
use crate::plane::BivarPoly;
use num_traits::{One, Signed, Zero};

/// Map a jet supported on two slot variables to a bivariate polynomial, with
/// the first slot as the z-axis.
fn plane_poly(f: &Jet, plane: [Var; 2]) -> Option<BivarPoly> {
    let mut p = BivarPoly::zero();
    for (m, c) in f.terms() {
        for v in Var::ALL {
            if v != plane[0] && v != plane[1] && m.exponent(v) != 0 {
                return None;
            }
        }
        p.add_term((m.exponent(plane[0]), m.exponent(plane[1])), c.clone());
    }
    Some(p)
}

fn reject(reason: impl Into<String>) -> QuotientError {
    QuotientError::NotTerminalQuotient(reason.into())
}

struct Shaper {
    current: Jet,
    log: TransformLog,
}

impl Shaper {
    fn new(f: &Jet) -> Shaper {
        Shaper {
            current: f.clone(),
            log: TransformLog::new(),
        }
    }

    fn scale(&mut self, c: Rat) {
        self.current = self.current.scale(&c);
        self.log.push_scale(c);
    }

    fn linear(&mut self, m: &crate::classify::quadratic::Matrix) {
        if *m == identity_matrix() {
            return;
        }
        let mut step = TransformLog::new();
        step.push_linear(m, self.current.order());
        self.current = step.replay(&self.current).expect("graded linear change");
        self.log.extend(step);
    }

    /// Diagonalize the quadric within a same-grade mask.
    fn diagonalize(&mut self, mask: [bool; 4]) -> [Rat; 4] {
        let f2 = self.current.homogeneous_part(2);
        let (_, m) = diagonalize_masked(&quadric_matrix(&f2), mask);
        self.linear(&m);
        let f2 = self.current.homogeneous_part(2);
        [
            f2.coeff(&Monomial([2, 0, 0, 0])),
            f2.coeff(&Monomial([0, 2, 0, 0])),
            f2.coeff(&Monomial([0, 0, 2, 0])),
            f2.coeff(&Monomial([0, 0, 0, 2])),
        ]
    }

    /// Check that the quadric couples no pair of variables with different
    /// grades, other than the explicitly allowed pairs.
    fn check_couplings(
        &self,
        action: &GradedAction,
        allowed: &[(usize, usize)],
    ) -> Result<(), QuotientError> {
        let f2 = self.current.homogeneous_part(2);
        for (m, _) in f2.terms() {
            let vars: Vec<usize> = (0..4).filter(|&i| m.0[i] > 0).collect();
            if vars.len() == 2 {
                let pair = (vars[0], vars[1]);
                if allowed.contains(&pair) {
                    continue;
                }
                if action.grades[vars[0]] != action.grades[vars[1]] {
                    return Err(reject(format!(
                        "quadric couples {} and {} across grades",
                        Var::from_index(vars[0]).name(),
                        Var::from_index(vars[1]).name()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Build the diagonal cA-type shape: two front squares among the masked
/// block plus the optional grade-zero square slot, with everything else
/// restricted to the plane.
fn shape_ca_diagonal(
    shaper: &mut Shaper,
    diag: [Rat; 4],
    block: &[usize],
    fixed_front: Option<usize>,
    min_residual_mult: u32,
) -> Result<(CoverShape, Vec<String>), QuotientError> {
    let mut notes = Vec::new();
    // Square slots inside the block.
    let block_squares: Vec<usize> = block.iter().copied().filter(|&i| !diag[i].is_zero()).collect();
    let mut front: Vec<usize> = Vec::new();
    if let Some(fx) = fixed_front {
        if diag[fx].is_zero() {
            return Err(reject(format!(
                "required square on {} is missing",
                Var::from_index(fx).name()
            )));
        }
        front.push(fx);
    }
    // Sign normalization: count positives among the candidate squares.
    let mut all_squares: Vec<usize> = front.iter().copied().chain(block_squares.iter().copied()).collect();
    all_squares.dedup();
    let pos = all_squares
        .iter()
        .filter(|&&i| shaper.current.coeff(&sq(i)).is_positive())
        .count();
    let neg = all_squares.len() - pos;
    if neg > pos {
        shaper.scale(-Rat::one());
    }
    let needed = 2 - front.len();
    // Prefer positive squares for the remaining front slots.
    let mut rest: Vec<usize> = block_squares
        .iter()
        .copied()
        .filter(|i| Some(*i) != fixed_front)
        .collect();
    rest.sort_by_key(|&i| {
        let c = shaper.current.coeff(&sq(i));
        (!c.is_positive(), i)
    });
    if rest.len() < needed {
        return Err(reject(
            "quadratic part has too low a rank for the matched table row",
        ));
    }
    front.extend(rest.iter().copied().take(needed));
    let leftover: Vec<usize> = rest.into_iter().skip(needed).collect();
    // Order the front pair with a positive square first when mixed.
    front.sort_by_key(|&i| {
        let c = shaper.current.coeff(&sq(i));
        (!c.is_positive(), i)
    });
    // Plane slots: the two variables not in front.
    let plane_slots: Vec<usize> = (0..4).filter(|i| !front.contains(i)).collect();
    if plane_slots.len() != 2 {
        return Err(reject("could not allocate a residual plane"));
    }
    if !leftover.is_empty() {
        notes.push(format!(
            "a third square joins the residual on {}",
            Var::from_index(leftover[0]).name()
        ));
    }
    let plane = [
        Var::from_index(plane_slots[0]),
        Var::from_index(plane_slots[1]),
    ];
    let front_terms: Jet = {
        let mut j = Jet::zero(shaper.current.order());
        for &i in &front {
            j.add_term(sq_mono(i), shaper.current.coeff(&sq(i)));
        }
        j
    };
    let residual = shaper.current.sub(&front_terms);
    let Some(f) = plane_poly(&residual, plane) else {
        return Err(reject(
            "terms mix the front squares with the residual plane; the input is not in \
             table normal form",
        ));
    };
    if f.is_zero() {
        return Err(reject("residual vanishes through the truncation order"));
    }
    if f.multiplicity().unwrap() < min_residual_mult {
        return Err(reject(format!(
            "residual multiplicity {} is below the row minimum {}",
            f.multiplicity().unwrap(),
            min_residual_mult
        )));
    }
    let a = shaper.current.coeff(&sq(front[0]));
    let b = shaper.current.coeff(&sq(front[1]));
    Ok((
        CoverShape::CaDiagonal {
            front: [(Var::from_index(front[0]), a), (Var::from_index(front[1]), b)],
            plane,
            f,
        },
        notes,
    ))
}

fn sq(i: usize) -> Monomial {
    sq_mono(i)
}

fn sq_mono(i: usize) -> Monomial {
    let mut m = [0u32; 4];
    m[i] = 2;
    Monomial(m)
}

/// Validate a graded series against the quotient table: graded homogeneity,
/// the partial freeness check, the action pattern, the row's equation shape
/// after graded linear normalization, and the row side conditions.
pub fn validate_action(
    f: &Jet,
    action: &GradedAction,
    opts: ClassifyOptions,
) -> Result<QuotientClass, QuotientError> {
    if f.is_zero() {
        return Err(reject("zero series"));
    }
    if action.is_trivial() {
        return Err(reject(
            "the action reduces to the trivial group; the input is a hypersurface",
        ));
    }
    let grading = action.grading();
    let d = match f.graded_check(&grading) {
        Ok(Ok(d)) => d,
        Ok(Err((a, b))) => {
            return Err(QuotientError::GradingError(a.to_string(), b.to_string()))
        }
        Err(_) => return Err(reject("zero series")),
    };
    freeness_check(f, action)?;
    let cover_class = classify(f, opts)?;
    let mut conditions = vec![
        format!("graded homogeneous of grade {d} mod {}", action.index),
        "no fixed coordinate subspace inside (F = 0)".into(),
    ];
    let n = action.index;
    let family = cover_class.family;
    if family == Family::NotCDV {
        return Err(reject(format!(
            "index-one cover is not compound Du Val: {}",
            cover_class.case.describe()
        )));
    }

    // Row dispatch on the action pattern.
    let mut shaper = Shaper::new(f);
    let (row, shape, extra_conditions): (QuotientRow, CoverShape, Vec<String>) = if n == 2
        && matches_pattern(action, [1, 1, 1, 0])
    {
        if d != 0 {
            return Err(reject("cA/2 needs grade 0"));
        }
        if family == Family::CA0 {
            (QuotientRow::CA2, CoverShape::Smooth, vec!["smooth index-one cover".into()])
        } else if family.is_ca() {
            shaper.check_couplings(action, &[])?;
            let diag = shaper.diagonalize([true, true, true, false]);
            let (shape, notes) =
                shape_ca_diagonal(&mut shaper, diag, &[0, 1, 2], None, 2)?;
            (QuotientRow::CA2, shape, notes)
        } else {
            return Err(reject(format!(
                "family {} does not fit the cA/2 row",
                family.name()
            )));
        }
    } else if n >= 3 && can_parameter(action).is_some() {
        let r = can_parameter(action).unwrap();
        if d != 0 {
            return Err(reject("cA/n needs grade 0"));
        }
        if family == Family::CA0 {
            (
                QuotientRow::CAn { r },
                CoverShape::Smooth,
                vec!["smooth index-one cover".into()],
            )
        } else if family.is_ca() {
            // Absorb an allowed yz or xz coupling into the hyperbolic pair.
            let allowed = if r == 1 {
                Some((1usize, 2usize))
            } else if r == n - 1 {
                Some((0usize, 2usize))
            } else {
                None
            };
            let mut allowed_pairs = vec![(0usize, 1usize)];
            if let Some(p) = allowed {
                allowed_pairs.push((p.0.min(p.1), p.0.max(p.1)));
            }
            shaper.check_couplings(action, &allowed_pairs)?;
            let f2 = shaper.current.homogeneous_part(2);
            let mut cxy = f2.coeff(&Monomial([1, 1, 0, 0]));
            if cxy.is_zero() {
                // For r = +-1 the hyperbolic pair may sit on (y,z) or (x,z);
                // a graded swap with z restores the xy form.
                let swapped = match allowed {
                    Some((1, 2)) if !f2.coeff(&Monomial([0, 1, 1, 0])).is_zero() => {
                        Some(Var::X)
                    }
                    Some((0, 2)) if !f2.coeff(&Monomial([1, 0, 1, 0])).is_zero() => {
                        Some(Var::Y)
                    }
                    _ => None,
                };
                let Some(sv) = swapped else {
                    return Err(reject("cA/n cover is missing the xy term"));
                };
                let mut m = identity_matrix();
                for row in m.iter_mut() {
                    for c in row.iter_mut() {
                        *c = Rat::zero();
                    }
                }
                for i in 0..4 {
                    m[i][i] = Rat::one();
                }
                m[sv.index()][sv.index()] = Rat::zero();
                m[Var::Z.index()][Var::Z.index()] = Rat::zero();
                m[sv.index()][Var::Z.index()] = Rat::one();
                m[Var::Z.index()][sv.index()] = Rat::one();
                shaper.linear(&m);
                cxy = shaper
                    .current
                    .homogeneous_part(2)
                    .coeff(&Monomial([1, 1, 0, 0]));
                if cxy.is_zero() {
                    return Err(reject("cA/n cover is missing the xy term"));
                }
            }
            let f2 = shaper.current.homogeneous_part(2);
            if let Some((i, j)) = allowed {
                // x (or y) absorbs its z-coupling: x' = x + (c/cxy) z.
                let (mix_var, other) = if i == 1 { (Var::Y, j) } else { (Var::X, j) };
                let cmix = f2.coeff(&{
                    let mut e = [0u32; 4];
                    e[if mix_var == Var::Y { 1 } else { 0 }] += 1;
                    e[other] += 1;
                    Monomial(e)
                });
                if !cmix.is_zero() {
                    // With a yz term: xy + c yz = y (x + c z): shift x.
                    let shift_var = if mix_var == Var::Y { Var::X } else { Var::Y };
                    let mut m = identity_matrix();
                    m[shift_var.index()][other] = -cmix / cxy.clone();
                    shaper.linear(&m);
                }
            }
            shaper.scale(Rat::one() / cxy);
            let front_terms = Jet::monomial(
                Monomial([1, 1, 0, 0]),
                Rat::one(),
                shaper.current.order(),
            );
            let residual = shaper.current.sub(&front_terms);
            let Some(fp) = plane_poly(&residual, [Var::Z, Var::T]) else {
                return Err(reject(
                    "terms mix the hyperbolic pair with the plane; not in table form",
                ));
            };
            if fp.is_zero() {
                return Err(reject("cA/n residual vanishes through the truncation order"));
            }
            (
                QuotientRow::CAn { r },
                CoverShape::CaHyperbolic {
                    plane: [Var::Z, Var::T],
                    f: fp,
                },
                vec![format!("gcd({n}, {r}) = 1 verified")],
            )
        } else {
            return Err(reject(format!(
                "family {} does not fit the cA/n row",
                family.name()
            )));
        }
    } else if n == 2 && matches_pattern(action, [0, 1, 1, 1]) {
        if d != 0 {
            return Err(reject("cAx/2 needs grade 0"));
        }
        if family == Family::CA0 {
            (QuotientRow::CAx2, CoverShape::Smooth, vec!["smooth index-one cover".into()])
        } else if family.is_ca() {
            shaper.check_couplings(action, &[])?;
            let diag = shaper.diagonalize([false, true, true, true]);
            let block_rank = (1..4).filter(|&i| !diag[i].is_zero()).count();
            if block_rank != 1 {
                return Err(reject(format!(
                    "cAx/2 needs exactly one square among (y,z,t); found {block_rank}"
                )));
            }
            let (shape, mut notes) =
                shape_ca_diagonal(&mut shaper, diag, &[1, 2, 3], Some(0), 4)?;
            notes.push("residual multiplicity >= 4 verified".into());
            (QuotientRow::CAx2, shape, notes)
        } else {
            return Err(reject(format!(
                "family {} does not fit the cAx/2 row",
                family.name()
            )));
        }
    } else if n == 4 && matches_pattern(action, [1, 3, 1, 2]) {
        if d != 2 {
            return Err(reject("cAx/4 needs grade 2"));
        }
        if !family.is_ca() || family == Family::CA0 {
            return Err(reject(format!(
                "family {} does not fit the cAx/4 row",
                family.name()
            )));
        }
        shaper.check_couplings(action, &[(0, 2)])?;
        // Diagonalize the (x, z) block; y^2 must be present.
        let diag = shaper.diagonalize([true, false, true, false]);
        let by = shaper.current.coeff(&sq(1));
        if by.is_zero() {
            return Err(reject("cAx/4 needs a y^2 term"));
        }
        let block_rank = [0usize, 2].iter().filter(|&&i| !diag[i].is_zero()).count();
        if block_rank == 0 {
            return Err(reject("cAx/4 needs a square in the (x, z) block"));
        }
        // Front: the first (x,z)-block square plus y.
        let fx = if !shaper.current.coeff(&sq(0)).is_zero() { 0 } else { 2 };
        let (shape, mut notes) =
            shape_ca_diagonal(&mut shaper, diag, &[fx, 1], Some(fx), 2)?;
        // Adjust: shape_ca_diagonal picked front = {fx, best other square};
        // require y in front.
        let CoverShape::CaDiagonal { front, .. } = &shape else {
            unreachable!();
        };
        if !front.iter().any(|(v, _)| *v == Var::Y) {
            return Err(reject("cAx/4 front squares must include y^2"));
        }
        notes.push("f_2(0,1) = 0 verified (grading forces it)".into());
        (QuotientRow::CAx4, shape, notes)
    } else if n == 2 && matches_pattern(action, [1, 0, 1, 1]) {
        if d != 0 {
            return Err(reject("cD/2 and cE/2 need grade 0"));
        }
        if family == Family::CA0 {
            (QuotientRow::CD2, CoverShape::Smooth, vec!["smooth index-one cover".into()])
        } else {
            shaper.check_couplings(action, &[])?;
            if !shaper.current.coeff(&sq(1)).is_zero() {
                return Err(reject("cD/2 and cE/2 forbid a y^2 term"));
            }
            let diag = shaper.diagonalize([true, false, true, true]);
            let rank = [0usize, 2, 3].iter().filter(|&&i| !diag[i].is_zero()).count();
            if rank != 1 {
                return Err(reject(format!(
                    "cD/2 and cE/2 need a rank-one quadric; found rank {rank}"
                )));
            }
            let row = if family.is_cd() {
                QuotientRow::CD2
            } else if family.is_ce() {
                QuotientRow::CE2
            } else {
                return Err(reject(format!(
                    "family {} does not fit cD/2 or cE/2",
                    family.name()
                )));
            };
            (row, CoverShape::General, vec![])
        }
    } else if n == 3 && matches_pattern(action, [0, 2, 1, 1]) {
        if d != 0 {
            return Err(reject("cD/3 needs grade 0"));
        }
        if family == Family::CA0 {
            (QuotientRow::CD3, CoverShape::Smooth, vec!["smooth index-one cover".into()])
        } else {
            let f2 = shaper.current.homogeneous_part(2);
            let x2 = f2.coeff(&sq(0));
            if x2.is_zero()
                || f2.sub(&Jet::monomial(sq(0), x2, f.order())).terms().count() != 0
            {
                return Err(reject("cD/3 needs a pure x^2 quadric"));
            }
            if !family.is_cd() {
                return Err(reject(format!(
                    "family {} does not fit the cD/3 row",
                    family.name()
                )));
            }
            let y3 = shaper.current.coeff(&Monomial([0, 3, 0, 0]));
            if y3.is_zero() {
                return Err(reject("cD/3 condition f_3(1,0,0) != 0 fails"));
            }
            (
                QuotientRow::CD3,
                CoverShape::General,
                vec!["f_3(1,0,0) != 0 verified".into()],
            )
        }
    } else {
        return Err(reject(format!(
            "no table row matches index {n} with grades ({}, {}, {}, {})",
            action.grades[0], action.grades[1], action.grades[2], action.grades[3]
        )));
    };
    conditions.extend(extra_conditions);
    Ok(QuotientClass {
        row,
        action: action.clone(),
        grade: d,
        cover_class,
        conditions,
        shape,
        shaping_log: shaper.log,
        shaped: shaper.current,
    })
}
