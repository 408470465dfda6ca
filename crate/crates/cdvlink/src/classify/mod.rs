//! Normal-form classification of a four-variable germ into the compound
//! Du Val families, with replayable coordinate-change logs.

pub mod cubic;
pub mod quadratic;

use crate::jet::reduce::{absorb_unit_power, jacobian_reduce, TransformLog};
use crate::jet::{Jet, Monomial, Rat, Var, WeightVector};
use crate::plane::{
    branch_report, squarefree_germ_check, BivarPoly, BranchReport, PlaneError, Sign,
    SquarefreeCheck,
};
use cubic::{cubic_squareness, CubicSquareness, TriPoly};
use num_traits::{One, Signed, Zero};
use quadratic::{identity_matrix, matrix_inverse, split_quadratic, Matrix, QuadraticData, SplitError};

/// Singularity family of a classified germ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Family {
    CA0,
    CA1,
    CA,
    CD4,
    CD,
    CE6,
    CE7,
    CE8,
    NotCDV,
}

impl Family {
    pub fn is_ca(self) -> bool {
        matches!(self, Family::CA0 | Family::CA1 | Family::CA)
    }

    pub fn is_cd(self) -> bool {
        matches!(self, Family::CD4 | Family::CD)
    }

    pub fn is_ce(self) -> bool {
        matches!(self, Family::CE6 | Family::CE7 | Family::CE8)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::CA0 => "cA0",
            Family::CA1 => "cA1",
            Family::CA => "cA",
            Family::CD4 => "cD4",
            Family::CD => "cD",
            Family::CE6 => "cE6",
            Family::CE7 => "cE7",
            Family::CE8 => "cE8",
            Family::NotCDV => "not-cDV",
        }
    }
}

/// Case tag within a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseTag {
    Smooth,
    /// Rank >= 3 quadric: table case 1-6 with the t-exponent m.
    Ca1 { case: u8, table_n: u32, m: u32 },
    /// Rank-2 definite quadric over a sign-changing residual with m arcs.
    CaPlus { m: usize },
    CaPlusDefinite { sign: Sign },
    /// Rank-2 indefinite quadric.
    CaMinus { m: usize },
    CaMinusDefinite,
    /// Branch analysis did not stabilize (typically a non-reduced residual).
    CaUnstable,
    Cd4,
    CdGt4 { a: Rat, r: u32, s: Option<u32> },
    Ce,
    NotCdv { reason: String },
}

impl CaseTag {
    pub fn describe(&self) -> String {
        match self {
            CaseTag::Smooth => "smooth point".into(),
            CaseTag::Ca1 { case, table_n, m } => {
                format!("cA1 table case {case} (n = {table_n}, t-power {m})")
            }
            CaseTag::CaPlus { m } => format!("cA+({m})"),
            CaseTag::CaPlusDefinite { sign } => format!("cA+(0,{sign})"),
            CaseTag::CaMinus { m } => format!("cA-({m})"),
            CaseTag::CaMinusDefinite => "cA-(0)".into(),
            CaseTag::CaUnstable => "cA (branch analysis unstable)".into(),
            CaseTag::Cd4 => "cD4 (squarefree cubic)".into(),
            CaseTag::CdGt4 { a, r, s } => match s {
                Some(s) => format!("cD>4 (a = {a}, r = {r}, s = {s})"),
                None => format!("cD>4 (a = {a}, r = {r}, h = 0)"),
            },
            CaseTag::Ce => "cE".into(),
            CaseTag::NotCdv { reason } => format!("not cDV: {reason}"),
        }
    }
}

/// Payload polynomials the link stage works from.
#[derive(Debug, Clone)]
pub enum ClassParts {
    None,
    /// The plane residual f(z, t) of a cA form a x^2 + b y^2 + f.
    Ca { f: BivarPoly },
    /// The residual f(y, z, t) of x^2 + f, with the cubic part split off.
    Cd4 { f3: TriPoly, residual: TriPoly },
    /// Data of x^2 + y^2 z + (y t-series) + h(z, t).
    CdGt4 { a: Rat, r: u32, h: BivarPoly },
    /// Data of x^2 + y^3 + y g(z, t) + h(z, t).
    Ce { g: BivarPoly, h: BivarPoly },
}

/// Partial isolatedness information; reported, never blocking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsolatednessNote {
    Verified,
    Refuted(String),
    Unknown,
}

/// Classification outcome: family, subtype, normal-form witness, and the log
/// that replays the reduction on the raw input.
#[derive(Debug, Clone)]
pub struct SingularityClass {
    pub family: Family,
    /// Du Val subtype n (1 for cA1, mult-1 for cA, 4 for cD4, ...).
    pub subtype: Option<u32>,
    pub case: CaseTag,
    pub parts: ClassParts,
    pub witness: Jet,
    pub quadratic: Option<QuadraticData>,
    /// Stabilized circle analysis of the cA residual, when applicable.
    pub branch: Option<BranchReport>,
    pub log: TransformLog,
    /// Truncation order at which the classification stabilized.
    pub truncation: u32,
    pub isolated: IsolatednessNote,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub truncation: u32,
    pub max_truncation: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            truncation: 12,
            max_truncation: 48,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("classification inconclusive at truncation order {at_order}: {context}")]
    TruncationInconclusive { at_order: u32, context: String },
}

/// Classify a polynomial germ, escalating the truncation order when a
/// subtype decision is not yet visible.
pub fn classify(input: &Jet, opts: ClassifyOptions) -> Result<SingularityClass, ClassifyError> {
    let mut order = opts.truncation.max(input.top_degree().unwrap_or(1)).max(4);
    loop {
        match classify_at(input, order) {
            Err(ClassifyError::TruncationInconclusive { .. }) if order < opts.max_truncation => {
                order = (order * 2).min(opts.max_truncation);
            }
            other => return other,
        }
    }
}

fn not_cdv(input: &Jet, order: u32, reason: &str) -> SingularityClass {
    SingularityClass {
        family: Family::NotCDV,
        subtype: None,
        case: CaseTag::NotCdv {
            reason: reason.into(),
        },
        parts: ClassParts::None,
        witness: input.truncated(order),
        quadratic: None,
        branch: None,
        log: TransformLog::new(),
        truncation: order,
        isolated: IsolatednessNote::Unknown,
    }
}

fn classify_at(input: &Jet, order: u32) -> Result<SingularityClass, ClassifyError> {
    let f = input.with_order(order);
    if f.is_zero() {
        return Ok(not_cdv(input, order, "zero input"));
    }
    assert!(
        f.constant_term().is_zero(),
        "input does not vanish at the origin"
    );
    if !f.homogeneous_part(1).is_zero() {
        return Ok(SingularityClass {
            family: Family::CA0,
            subtype: Some(0),
            case: CaseTag::Smooth,
            parts: ClassParts::None,
            witness: f.clone(),
            quadratic: None,
            branch: None,
            log: TransformLog::new(),
            truncation: order,
            isolated: IsolatednessNote::Verified,
        });
    }
    let split = match split_quadratic(&f) {
        Ok(s) => s,
        Err(SplitError::SmoothPoint) => unreachable!("linear part handled above"),
    };
    match split.quadratic.rank() {
        0 => Ok(not_cdv(
            input,
            order,
            "multiplicity at least 3 (quadratic part vanishes)",
        )),
        1 => classify_corank3(f, split, order),
        _ => reduce_ca(split, order),
    }
}

/// Rank-one quadric: normalize to x^2 + G(y,z,t) and branch on the cubic.
fn classify_corank3(
    f: Jet,
    split: quadratic::Split,
    order: u32,
) -> Result<SingularityClass, ClassifyError> {
    let mut log = split.log;
    let mut witness = split.witness;
    let a = split.quadratic.diagonal[0].clone();
    debug_assert!(a.is_positive());
    if !a.is_one() {
        let inv = Rat::one() / a;
        witness = witness.scale(&inv);
        log.push_scale(inv);
    }
    let residual = witness.sub(&witness.homogeneous_part(2));
    let _ = TriPoly::from_jet(&residual).expect("residual must avoid x");
    let f3 = TriPoly::from_jet(&residual.homogeneous_part(3)).unwrap();
    if f3.is_zero() {
        return Ok(not_cdv(
            &f,
            order,
            "rank-one quadric with vanishing cubic part",
        ));
    }
    match cubic_squareness(&f3) {
        CubicSquareness::Squarefree => {
            let quartic = TriPoly::from_jet(&residual.part_from_degree(4)).unwrap();
            Ok(SingularityClass {
                family: Family::CD4,
                subtype: Some(4),
                case: CaseTag::Cd4,
                parts: ClassParts::Cd4 {
                    f3,
                    residual: quartic,
                },
                witness,
                quadratic: Some(split.quadratic),
                branch: None,
                log,
                truncation: order,
                isolated: IsolatednessNote::Unknown,
            })
        }
        CubicSquareness::DoubleLine { l1, cofactor } => {
            reduce_cd(witness, log, split.quadratic, l1, cofactor, order)
        }
        CubicSquareness::Cube { l, coeff } => {
            reduce_ce(witness, log, split.quadratic, l, coeff, order)
        }
        CubicSquareness::Degenerate => Ok(not_cdv(
            &f,
            order,
            "cubic part has an unrecognized square structure",
        )),
    }
}

/// Build the 4x4 substitution sending the listed linear forms in (y,z,t) to
/// the leading new coordinates: new_y = forms[0], new_z = forms[1] (when
/// present), completed by coordinate vectors to an invertible change.
fn change_to_forms(forms: &[[Rat; 3]]) -> Matrix {
    // Rows of A: the target forms, then unit vectors completing a basis.
    let mut rows: Vec<[Rat; 3]> = forms.to_vec();
    for unit in 0..3 {
        if rows.len() == 3 {
            break;
        }
        let mut cand = [Rat::zero(), Rat::zero(), Rat::zero()];
        cand[unit] = Rat::one();
        let mut trial = rows.clone();
        trial.push(cand.clone());
        if rank3(&trial) == trial.len() {
            rows.push(cand);
        }
    }
    assert_eq!(rows.len(), 3, "could not complete a basis");
    let mut a4 = identity_matrix();
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            a4[1 + i][1 + j] = v.clone();
        }
    }
    
    matrix_inverse(&a4).expect("change of basis is invertible")
}

fn rank3(rows: &[[Rat; 3]]) -> usize {
    let mut m: Vec<[Rat; 3]> = rows.to_vec();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let fct = m[r][col].clone() / p.clone();
                for c in 0..3 {
                    let d = fct.clone() * m[rank][c].clone();
                    m[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

const CD_WEIGHTS: WeightVector = WeightVector([3, 2, 2, 6]);
const CE_WEIGHTS: WeightVector = WeightVector([3, 2, 3, 3]);

/// cD>4: send l1 -> y, l2 -> z, eliminate y^2/yz monomials above the leading
/// form, then read off a, r, s from x^2 + y^2 z + a y t^r + ... + h(z, t).
fn reduce_cd(
    witness: Jet,
    mut log: TransformLog,
    quad: QuadraticData,
    l1: [Rat; 3],
    cofactor: [Rat; 3],
    order: u32,
) -> Result<SingularityClass, ClassifyError> {
    let change = change_to_forms(&[l1, cofactor]);
    let mut step = TransformLog::new();
    step.push_linear(&change, order);
    let mut current = step.replay(&witness).expect("linear change");
    log.extend(step);
    debug_assert_eq!(
        current.homogeneous_part(3),
        Jet::monomial(Monomial([0, 2, 1, 0]), Rat::one(), order),
        "cubic part must become y^2 z exactly"
    );
    let red = jacobian_reduce(&current, &CD_WEIGHTS);
    current = red.reduced;
    log.extend(red.log);

    let mut yt_series: Vec<(u32, Rat)> = Vec::new();
    let mut h = BivarPoly::zero();
    for (m, c) in current.terms() {
        let (x, y, z, t) = (
            m.exponent(Var::X),
            m.exponent(Var::Y),
            m.exponent(Var::Z),
            m.exponent(Var::T),
        );
        match (x, y, z, t) {
            (2, 0, 0, 0) => {}
            (0, 2, 1, 0) => {}
            (0, 1, 0, k) => yt_series.push((k, c.clone())),
            (0, 0, a, b) => h.add_term((a, b), c.clone()),
            _ => panic!("unexpected monomial {m} in reduced cD form"),
        }
    }
    yt_series.sort_by_key(|(k, _)| *k);
    let (a, r) = match yt_series.first() {
        Some((k, c)) => {
            assert!(*k >= 3, "y t^{k} term below the cD normal-form bound");
            (c.clone(), *k)
        }
        None => (Rat::zero(), 0),
    };
    let s = h.multiplicity();
    if let Some(s) = s {
        assert!(s >= 4, "h has multiplicity {s} < 4 in reduced cD form");
    }
    let n = match (a.is_zero(), s) {
        (false, Some(s)) => (2 * r).min(s + 1),
        (false, None) => 2 * r,
        (true, Some(s)) => s + 1,
        (true, None) => {
            return Err(ClassifyError::TruncationInconclusive {
                at_order: order,
                context: "cD form x^2 + y^2 z with no y t-term and no h through this order".into(),
            });
        }
    };
    Ok(SingularityClass {
        family: Family::CD,
        subtype: Some(n),
        case: CaseTag::CdGt4 {
            a: a.clone(),
            r,
            s,
        },
        parts: ClassParts::CdGt4 { a, r, h },
        witness: current,
        quadratic: Some(quad),
        branch: None,
        log,
        truncation: order,
        isolated: IsolatednessNote::Unknown,
    })
}

/// cE: send l -> y, eliminate the y^2 data through the Jacobian ideal of
/// x^2 + y^3, rescale to unit coefficients, and split off g and h.
fn reduce_ce(
    witness: Jet,
    mut log: TransformLog,
    quad: QuadraticData,
    l: [Rat; 3],
    _coeff: Rat,
    order: u32,
) -> Result<SingularityClass, ClassifyError> {
    let change = change_to_forms(&[l]);
    let mut step = TransformLog::new();
    step.push_linear(&change, order);
    let mut current = step.replay(&witness).expect("linear change");
    log.extend(step);
    let b = current.coeff(&Monomial([0, 3, 0, 0]));
    debug_assert!(!b.is_zero());
    debug_assert_eq!(
        current.homogeneous_part(3),
        Jet::monomial(Monomial([0, 3, 0, 0]), b.clone(), order),
        "cubic part must become a multiple of y^3"
    );
    let red = jacobian_reduce(&current, &CE_WEIGHTS);
    current = red.reduced;
    log.extend(red.log);
    // Normalize coefficients of x^2 and y^3 to one: multiply by b^2 and
    // rescale x and y.
    if !b.is_one() {
        let b2 = b.clone() * b.clone();
        current = current.scale(&b2);
        log.push_scale(b2);
        let inv_b = Rat::one() / b.clone();
        let mut m = identity_matrix();
        m[Var::X.index()][Var::X.index()] = inv_b.clone();
        m[Var::Y.index()][Var::Y.index()] = inv_b;
        let mut step = TransformLog::new();
        step.push_linear(&m, order);
        current = step.replay(&current).expect("diagonal rescale");
        log.extend(step);
    }
    let mut g = BivarPoly::zero();
    let mut h = BivarPoly::zero();
    for (m, c) in current.terms() {
        let (x, y, z, t) = (
            m.exponent(Var::X),
            m.exponent(Var::Y),
            m.exponent(Var::Z),
            m.exponent(Var::T),
        );
        match (x, y, z, t) {
            (2, 0, 0, 0) => {}
            (0, 3, 0, 0) => {}
            (0, 1, a, b2) => g.add_term((a, b2), c.clone()),
            (0, 0, a, b2) => h.add_term((a, b2), c.clone()),
            _ => panic!("unexpected monomial {m} in reduced cE form"),
        }
    }
    let h4 = h.homogeneous_part(4);
    let g3 = g.homogeneous_part(3);
    let h5 = h.homogeneous_part(5);
    let family = if !h4.is_zero() {
        Family::CE6
    } else if !g3.is_zero() {
        Family::CE7
    } else if !h5.is_zero() {
        Family::CE8
    } else {
        return Err(ClassifyError::TruncationInconclusive {
            at_order: order,
            context:
                "cE form x^2 + y^3 with g_3 = h_4 = h_5 = 0 through this order (possibly not terminal)"
                    .into(),
        });
    };
    let subtype = match family {
        Family::CE6 => 6,
        Family::CE7 => 7,
        _ => 8,
    };
    Ok(SingularityClass {
        family,
        subtype: Some(subtype),
        case: CaseTag::Ce,
        parts: ClassParts::Ce { g, h },
        witness: current,
        quadratic: Some(quad),
        branch: None,
        log,
        truncation: order,
        isolated: IsolatednessNote::Unknown,
    })
}

/// Rank >= 2 quadric: the cA families.
fn reduce_ca(
    split: quadratic::Split,
    order: u32,
) -> Result<SingularityClass, ClassifyError> {
    let quad = split.quadratic.clone();
    let rank = quad.rank();
    let mut log = split.log;
    let mut witness = split.witness;
    if rank == 2 {
        let residual = witness.sub(&witness.homogeneous_part(2));
        if residual.is_zero() {
            return Err(ClassifyError::TruncationInconclusive {
                at_order: order,
                context: "rank-two quadric with no residual through this order".into(),
            });
        }
        let fb = BivarPoly::from_jet(&residual).expect("residual in (z, t)");
        let n = fb.multiplicity().unwrap() - 1;
        let plus = quad.negative == 0;
        let (case, branch, isolated) = match branch_report(&fb) {
            Ok(br) => {
                let case = match (plus, br.crossings) {
                    (true, 0) => CaseTag::CaPlusDefinite {
                        sign: br.definite_sign.unwrap(),
                    },
                    (false, 0) => CaseTag::CaMinusDefinite,
                    (true, _) => CaseTag::CaPlus { m: br.m },
                    (false, _) => CaseTag::CaMinus { m: br.m },
                };
                let isolated = match squarefree_germ_check(&fb).unwrap() {
                    SquarefreeCheck::Verified => IsolatednessNote::Verified,
                    SquarefreeCheck::Refuted(w) => {
                        IsolatednessNote::Refuted(format!("repeated factor {w} in f(z,t)"))
                    }
                };
                (case, Some(br), isolated)
            }
            Err(PlaneError::Unstable { .. }) => {
                let isolated = match squarefree_germ_check(&fb).unwrap() {
                    SquarefreeCheck::Verified => IsolatednessNote::Unknown,
                    SquarefreeCheck::Refuted(w) => {
                        IsolatednessNote::Refuted(format!("repeated factor {w} in f(z,t)"))
                    }
                };
                (CaseTag::CaUnstable, None, isolated)
            }
            Err(e) => panic!("branch analysis failed structurally: {e}"),
        };
        return Ok(SingularityClass {
            family: if n == 1 { Family::CA1 } else { Family::CA },
            subtype: Some(n),
            case,
            parts: ClassParts::Ca { f: fb },
            witness,
            quadratic: Some(quad),
            branch,
            log,
            truncation: order,
            isolated,
        });
    }
    // Rank 3 or 4: reach a x^2 + b y^2 + c z^2 + d t^m.
    let (m, d) = if rank == 3 {
        let residual = witness.sub(&witness.homogeneous_part(2));
        if residual.is_zero() {
            return Err(ClassifyError::TruncationInconclusive {
                at_order: order,
                context: "rank-three quadric with no residual through this order".into(),
            });
        }
        debug_assert!(residual
            .terms()
            .all(|(mm, _)| mm.degree() == mm.exponent(Var::T)));
        witness = absorb_unit_power(&witness, Var::T, &mut log);
        let residual = witness.sub(&witness.homogeneous_part(2));
        let (mm, c) = residual.terms().next().map(|(mm, c)| (*mm, c.clone())).unwrap();
        (mm.exponent(Var::T), c)
    } else {
        (2, quad.diagonal[3].clone())
    };
    let z_sign = Sign::of(&quad.diagonal[2]).unwrap();
    let d_sign = Sign::of(&d).unwrap();
    let (case, table_n) = match (z_sign, m % 2 == 0, d_sign) {
        (Sign::Plus, false, _) => (1, (m - 1) / 2),
        (Sign::Minus, false, _) => (2, (m - 1) / 2),
        (Sign::Plus, true, Sign::Plus) => (3, m / 2),
        (Sign::Plus, true, Sign::Minus) => (4, m / 2),
        (Sign::Minus, true, Sign::Plus) => (5, m / 2),
        (Sign::Minus, true, Sign::Minus) => (6, m / 2),
    };
    // The general cA path folds the extra squares into the plane residual.
    let mut fb = BivarPoly::zero();
    fb.add_term((2, 0), quad.diagonal[2].clone());
    fb.add_term((0, m), d);
    let branch = branch_report(&fb).expect("diagonal residual is stable");
    Ok(SingularityClass {
        family: Family::CA1,
        subtype: Some(1),
        case: CaseTag::Ca1 {
            case,
            table_n,
            m,
        },
        parts: ClassParts::Ca { f: fb },
        witness,
        quadratic: Some(quad),
        branch: Some(branch),
        log,
        truncation: order,
        isolated: IsolatednessNote::Verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{mono, rat_int};

    fn jet(terms: &[(Monomial, i64)]) -> Jet {
        Jet::from_terms(
            terms.iter().map(|(m, c)| (*m, rat_int(*c))),
            12,
        )
    }

    #[test]
    fn classify_ca1_case4() {
        // x^2 + y^2 + z^2 - t^2: cA1 table case 4.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 2, 0), 1),
            (mono(0, 0, 0, 2), -1),
        ]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CA1);
        assert_eq!(c.subtype, Some(1));
        assert!(matches!(c.case, CaseTag::Ca1 { case: 4, table_n: 1, m: 2 }));
        assert_eq!(c.log.replay(&f).unwrap(), c.witness);
    }

    #[test]
    fn classify_ce6() {
        // x^2 + y^3 + z^4 + t^4 -> cE6.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 3, 0, 0), 1),
            (mono(0, 0, 4, 0), 1),
            (mono(0, 0, 0, 4), 1),
        ]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CE6);
    }

    #[test]
    fn classify_cd_mixed() {
        // x^2 + y^2 z + y t^3 + z^4: a = 1, r = 3, s = 4, n = min(6, 5) = 5.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 1, 0), 1),
            (mono(0, 1, 0, 3), 1),
            (mono(0, 0, 4, 0), 1),
        ]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CD);
        assert_eq!(c.subtype, Some(5));
        match &c.case {
            CaseTag::CdGt4 { a, r, s } => {
                assert_eq!(a, &rat_int(1));
                assert_eq!(*r, 3);
                assert_eq!(*s, Some(4));
            }
            other => panic!("expected cD>4 data, got {other:?}"),
        }
        assert_eq!(c.log.replay(&f).unwrap(), c.witness);
    }

    #[test]
    fn classify_cd_pure_h() {
        // x^2 + y^2 z + z^4 + t^4: a = 0, s = 4, n = 5.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 1, 0), 1),
            (mono(0, 0, 4, 0), 1),
            (mono(0, 0, 0, 4), 1),
        ]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CD);
        assert_eq!(c.subtype, Some(5));
    }

    #[test]
    fn classify_ce8() {
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 3, 0, 0), 1),
            (mono(0, 0, 5, 0), 1),
            (mono(0, 0, 0, 5), 1),
        ]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CE8);
    }

    #[test]
    fn classify_ce7() {
        // x^2 + y^3 + y z^3 + z^5 t: h4 = 0, g3 = z^3.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 3, 0, 0), 1),
            (mono(0, 1, 3, 0), 1),
            (mono(0, 0, 5, 1), 1),
        ]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CE7);
    }

    #[test]
    fn classify_ca_n2() {
        // x^2 + y^2 + z^3 + t^3: n = mult - 1 = 2.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 3, 0), 1),
            (mono(0, 0, 0, 3), 1),
        ]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CA);
        assert_eq!(c.subtype, Some(2));
    }

    #[test]
    fn classify_cd4_cube_reroute() {
        // x^2 + (y+z)^3 expanded + t^4: cubic is a perfect cube -> cE path.
        // x^2 + y^3+3y^2 z+3y z^2+z^3 + t^4.
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 3, 0, 0), 1),
            (mono(0, 2, 1, 0), 3),
            (mono(0, 1, 2, 0), 3),
            (mono(0, 0, 3, 0), 1),
            (mono(0, 0, 0, 4), 1),
        ]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CE6, "h4 should be t^4");
        assert_eq!(c.log.replay(&f).unwrap(), c.witness);
    }

    #[test]
    fn classify_smooth() {
        let f = jet(&[(mono(0, 0, 0, 1), 1), (mono(0, 0, 2, 0), 1)]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::CA0);
    }

    #[test]
    fn classify_not_cdv() {
        let f = jet(&[(mono(0, 3, 0, 0), 1), (mono(0, 0, 3, 0), 1)]);
        let c = classify(&f, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::NotCDV);
        // x^2 + quartics only: rank 1 and f3 = 0.
        let g = jet(&[(mono(2, 0, 0, 0), 1), (mono(0, 0, 4, 0), 1)]);
        let c = classify(&g, ClassifyOptions::default()).unwrap();
        assert_eq!(c.family, Family::NotCDV);
    }

    #[test]
    fn classify_inconclusive_reported() {
        // x^2 + y^2 alone: the rank-two residual never appears at any order,
        // so escalation ends in an honest error.
        let f = jet(&[(mono(2, 0, 0, 0), 1), (mono(0, 2, 0, 0), 1)]);
        assert!(matches!(
            classify(&f, ClassifyOptions::default()),
            Err(ClassifyError::TruncationInconclusive { at_order: 48, .. })
        ));
    }

    #[test]
    fn classify_scaling_invariant() {
        let f = jet(&[
            (mono(2, 0, 0, 0), 1),
            (mono(0, 2, 0, 0), 1),
            (mono(0, 0, 3, 0), 1),
            (mono(0, 0, 0, 3), 1),
        ]);
        let c1 = classify(&f, ClassifyOptions::default()).unwrap();
        let c2 = classify(&f.scale(&crate::jet::rat(-7, 3)), ClassifyOptions::default()).unwrap();
        assert_eq!(c1.family, c2.family);
        assert_eq!(c1.subtype, c2.subtype);
    }
}
