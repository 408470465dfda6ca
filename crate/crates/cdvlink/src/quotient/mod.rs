//! Cyclic quotients: graded actions, the index table, companions, and the
//! real-point involution.

pub mod link;

use crate::classify::{ClassifyError, SingularityClass};
use crate::jet::reduce::TransformLog;
use crate::jet::{GradedWeights, Jet, Rat, Var};
use crate::plane::BivarPoly;
use num_integer::Integer;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("series is not graded homogeneous: monomials {0} and {1} have different grades")]
    GradingError(String, String),
    #[error("no terminal quotient table row matches: {0}")]
    NotTerminalQuotient(String),
    #[error("classification failed: {0}")]
    Classify(String),
}

impl From<ClassifyError> for QuotientError {
    fn from(e: ClassifyError) -> Self {
        QuotientError::Classify(e.to_string())
    }
}

/// A cyclic grading 1/n(a_x, a_y, a_z, a_t) with its derived two-adic data.
///
/// Construction reduces non-faithful gradings to their faithful core and, for
/// odd index, normalizes the generator so the minimal two-adic valuation of
/// the grades is zero. The sign involution tau acts on the real points of the
/// quotient construction; it is the identity exactly when the index is odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAction {
    /// Faithful index (may be 1 when the input action was trivial).
    pub index: u32,
    /// Grade representatives in [0, index).
    pub grades: [u32; 4],
    /// Index as given, before the faithful reduction.
    pub raw_index: u32,
    pub raw_grades: [i64; 4],
    /// Two-adic valuation s of the index.
    pub two_adic: u32,
    /// Odd part of the index.
    pub odd_part: u32,
    /// Minimal two-adic valuation c of the nonzero grades (0 after
    /// normalization).
    pub grade_two_adic: u32,
    /// Sign vector of the real involution; all ones when the index is odd.
    pub tau: [i8; 4],
}

fn v2(mut x: u32) -> u32 {
    if x == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while x.is_multiple_of(2) {
        x /= 2;
        v += 1;
    }
    v
}

fn mod_inverse(a: u32, n: u32) -> Option<u32> {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (n as i64, a as i64 % n as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i64) as u32)
}

impl GradedAction {
    pub fn new(index: u32, grades: [i64; 4]) -> GradedAction {
        assert!(index >= 1);
        let raw_index = index;
        let raw_grades = grades;
        let mut n = index;
        let mut residues: [u32; 4] = [
            grades[0].rem_euclid(n as i64) as u32,
            grades[1].rem_euclid(n as i64) as u32,
            grades[2].rem_euclid(n as i64) as u32,
            grades[3].rem_euclid(n as i64) as u32,
        ];
        // Faithful core: divide out the common factor of the grades and n.
        let mut g = n;
        for r in residues {
            g = g.gcd(&r);
        }
        if g > 1 {
            n /= g;
            for r in residues.iter_mut() {
                *r /= g;
                *r %= n.max(1);
            }
        }
        if n <= 1 {
            return GradedAction {
                index: 1,
                grades: [0; 4],
                raw_index,
                raw_grades,
                two_adic: 0,
                odd_part: 1,
                grade_two_adic: 0,
                tau: [1; 4],
            };
        }
        // For odd index, renormalize the generator so some grade is odd.
        if n % 2 == 1 {
            let c = residues.iter().map(|&r| v2(r)).min().unwrap();
            if c > 0 && c != u32::MAX {
                let inv = mod_inverse(mod_pow(2, c, n), n).expect("2 invertible mod odd n");
                for r in residues.iter_mut() {
                    *r = ((*r as u64 * inv as u64) % n as u64) as u32;
                }
            }
        }
        let s = v2(n);
        let odd_part = n >> s;
        let c = residues
            .iter()
            .filter(|&&r| r != 0)
            .map(|&r| v2(r))
            .min()
            .unwrap_or(0);
        let tau = if s > c {
            let shift = c;
            let mut t = [1i8; 4];
            for (i, &r) in residues.iter().enumerate() {
                let reduced = if r == 0 { 0 } else { r >> shift };
                t[i] = if reduced % 2 == 1 { -1 } else { 1 };
            }
            t
        } else {
            [1; 4]
        };
        GradedAction {
            index: n,
            grades: residues,
            raw_index,
            raw_grades,
            two_adic: s,
            odd_part,
            grade_two_adic: c,
            tau,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.index <= 1
    }

    pub fn is_even(&self) -> bool {
        self.index.is_multiple_of(2)
    }

    pub fn grading(&self) -> GradedWeights {
        GradedWeights::new(self.index.max(2), [
            self.grades[0] as i64,
            self.grades[1] as i64,
            self.grades[2] as i64,
            self.grades[3] as i64,
        ])
    }

    /// Parity governing orientability of index-two quotient pieces:
    /// w(F) + sum of the weights.
    pub fn orientation_parity(&self, grade_of_f: u32) -> bool {
        // true = odd = orientation-reversing on fixed components.
        let sum: u32 = self.grades.iter().map(|&a| a % 2).sum::<u32>() + grade_of_f % 2;
        sum % 2 == 1
    }
}

fn mod_pow(base: u32, mut exp: u32, n: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut b = base as u64 % n as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % n as u64;
        }
        b = b * b % n as u64;
        exp >>= 1;
    }
    acc as u32
}

/// The sign involution on the ambient variables induced by the action.
pub fn tau_of(action: &GradedAction) -> [i8; 4] {
    action.tau
}

/// Companion series: the second real form of a graded-homogeneous series.
///
/// Implemented by the exact sign rule: a monomial of integer weight w flips
/// its coefficient exactly when (w - d) / n is odd, which agrees with the
/// complex substitution x_i -> eta^(a_i) x_i, eta a primitive 2^(s+1)-st
/// root of unity, followed by division by eta^d.
pub fn companion(f: &Jet, action: &GradedAction) -> Result<Jet, QuotientError> {
    let grading = action.grading();
    let d = match f.graded_check(&grading) {
        Ok(Ok(d)) => d,
        Ok(Err((a, b))) => {
            return Err(QuotientError::GradingError(a.to_string(), b.to_string()))
        }
        Err(_) => return Err(QuotientError::NotTerminalQuotient("zero series".into())),
    };
    let n = action.index as u64;
    let mut out = Jet::zero(f.order());
    for (m, c) in f.terms() {
        let w = grading.grade_int(m);
        let k = (w - d as u64) / n;
        let coeff = if k % 2 == 1 { -c.clone() } else { c.clone() };
        out.add_term(*m, coeff);
    }
    Ok(out)
}

/// Terminal quotient table rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum QuotientRow {
    /// ax^2 + by^2 + f(z,t), index 2, weights (1,1,1,0).
    CA2,
    /// xy + f(z,t), index n >= 3, weights (r, -r, 1, 0), gcd(n, r) = 1.
    CAn { r: u32 },
    /// ax^2 + by^2 + f(z,t) with mult f >= 4, index 2, weights (0,1,1,1).
    CAx2,
    /// ax^2 + by^2 + f(z,t) with f_2(0,1) = 0, index 4, weights (1,3,1,2).
    CAx4,
    /// x^2 + f(y,z,t), index 2, weights (1,0,1,1).
    CD2,
    /// x^2 + f(y,z,t) with f_3(1,0,0) != 0, index 3, weights (0,2,1,1).
    CD3,
    /// x^2 + y^3 + f(y,z,t), index 2, weights (1,0,1,1).
    CE2,
}

impl QuotientRow {
    pub fn name(self) -> String {
        match self {
            QuotientRow::CA2 => "cA/2".into(),
            QuotientRow::CAn { r } => format!("cA/n (r = {r})"),
            QuotientRow::CAx2 => "cAx/2".into(),
            QuotientRow::CAx4 => "cAx/4".into(),
            QuotientRow::CD2 => "cD/2".into(),
            QuotientRow::CD3 => "cD/3".into(),
            QuotientRow::CE2 => "cE/2".into(),
        }
    }
}

/// Row-shaped cover data used by the symbolic quotient assembly.
#[derive(Debug, Clone)]
pub enum CoverShape {
    /// Smooth cover (cA0): the link is a sphere fixed by tau.
    Smooth,
    /// a u^2 + b v^2 + f(p, q) in slot variables; front lists (var, coeff)
    /// with the positive square first when the signature is mixed.
    CaDiagonal {
        front: [(Var, Rat); 2],
        plane: [Var; 2],
        f: BivarPoly,
    },
    /// xy + f(p, q).
    CaHyperbolic { plane: [Var; 2], f: BivarPoly },
    /// x^2 + f(y, z, t): assembled through the numeric fallback.
    General,
}

/// A validated quotient input.
#[derive(Debug, Clone)]
pub struct QuotientClass {
    pub row: QuotientRow,
    pub action: GradedAction,
    /// Common grade d of the series.
    pub grade: u32,
    /// Classification of the index-one cover.
    pub cover_class: SingularityClass,
    /// Verified side conditions, for the report.
    pub conditions: Vec<String>,
    /// Shape data for the symbolic assembly.
    pub shape: CoverShape,
    /// Normalization applied before shaping (graded linear changes only).
    pub shaping_log: TransformLog,
    /// The shaped series the assembly works from.
    pub shaped: Jet,
}

/// Verify the partial freeness condition: for every nontrivial group element
/// the fixed coordinate subspace meets (F = 0) only at the origin, detected
/// by the restriction of F to that subspace being nonzero.
fn freeness_check(f: &Jet, action: &GradedAction) -> Result<(), QuotientError> {
    let n = action.index;
    for k in 1..n {
        let fixed: Vec<usize> = (0..4)
            .filter(|&i| (k as u64 * action.grades[i] as u64).is_multiple_of(n as u64))
            .collect();
        if fixed.is_empty() {
            continue;
        }
        let restricted_nonzero = f.terms().any(|(m, _)| {
            (0..4).all(|i| fixed.contains(&i) || m.exponent(Var::from_index(i)) == 0)
        });
        if !restricted_nonzero {
            return Err(QuotientError::NotTerminalQuotient(format!(
                "the action's power {k} fixes a coordinate subspace inside (F = 0); \
                 the quotient cannot be terminal"
            )));
        }
    }
    Ok(())
}

/// Unit multiples of the grade vector, for pattern matching up to a change
/// of the group generator.
fn matches_pattern(action: &GradedAction, pattern: [u32; 4]) -> bool {
    let n = action.index;
    (1..n)
        .filter(|u| u.gcd(&n) == 1)
        .any(|u| {
            (0..4).all(|i| (action.grades[i] as u64 * u as u64) % n as u64 == pattern[i] as u64)
        })
}

/// For cA/n: the unit-normalized parameter r with pattern (r, n - r, 1, 0).
fn can_parameter(action: &GradedAction) -> Option<u32> {
    let n = action.index;
    let u = mod_inverse(action.grades[2], n)?;
    let map = |a: u32| ((a as u64 * u as u64) % n as u64) as u32;
    if map(action.grades[3]) != 0 {
        return None;
    }
    let r = map(action.grades[0]);
    let minus_r = map(action.grades[1]);
    if (r + minus_r) % n != 0 || r == 0 {
        return None;
    }
    if r.gcd(&n) != 1 {
        return None;
    }
    Some(r)
}

mod shaping;
pub use shaping::validate_action;

/// Verify the non-isolatedness corollary: a validated index > 1 quotient has
/// a nonempty real link. A violation is an implementation bug, never a valid
/// state.
pub fn not_isolated_check(link: &crate::link::SurfaceDescriptor) -> Result<(), QuotientError> {
    if link.is_empty() {
        return Err(QuotientError::NotTerminalQuotient(
            "internal contract violation: validated quotient produced an empty link".into(),
        ));
    }
    Ok(())
}
