//! Sign arcs of a plane-curve germ on small circles.
//!
//! The circle z^2 + t^2 = eps^2 is parametrized rationally by
//! (z, t) = eps((1-u^2)/(1+u^2), 2u/(1+u^2)), which turns the restriction of
//! a bivariate polynomial into a univariate sign problem handled exactly by
//! Sturm isolation. The point u = infinity corresponds to (-eps, 0).

use super::bivar::BivarPoly;
use super::uni::{isolate_real_roots, IsolatedRoot, PlaneError, Sign, UniPoly};
use crate::jet::{rat, rat_int, Rat};
use num_traits::{One, Signed, Zero};

/// One maximal open arc of constant sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub sign: Sign,
    /// A rational parameter value strictly inside the arc.
    pub sample: Rat,
}

/// Cyclic sign-arc structure of f on a circle of a fixed radius.
#[derive(Debug, Clone)]
pub struct CircleArcs {
    pub epsilon: Rat,
    pub arcs: Vec<Arc>,
    /// Number of odd-multiplicity circle crossings (including infinity).
    pub crossings: usize,
    /// Whether any circle root had even multiplicity (tangency); arc counts
    /// from a touched circle are not trusted and callers retry.
    pub touched: bool,
    roots: Vec<IsolatedRoot>,
    /// Arc index per root gap: entry i is the arc covering (root_{i-1}, root_i)
    /// with entry 0 covering (-inf, root_0) and entry k covering (root_{k-1}, +inf).
    gap_arc: Vec<usize>,
    /// Arc crossing the infinity point, when infinity is not a root.
    infinity_arc: Option<usize>,
    sturm: Vec<UniPoly>,
    squarefree: UniPoly,
}

impl CircleArcs {
    pub fn negative_arcs(&self) -> usize {
        self.arcs.iter().filter(|a| a.sign == Sign::Minus).count()
    }

    pub fn sign_word(&self) -> Vec<Sign> {
        self.arcs.iter().map(|a| a.sign).collect()
    }

    /// Arc containing the circle point with parameter u, or None when the
    /// point lies on the curve.
    pub fn arc_containing(&self, u: &Rat) -> Option<usize> {
        if self.squarefree.eval(u).is_zero() {
            return None;
        }
        let mut below = 0usize;
        for r in &self.roots {
            if r.is_point() {
                if *u > r.lo {
                    below += 1;
                }
            } else if *u >= r.hi {
                below += 1;
            } else if *u > r.lo {
                // Strictly inside the isolating interval: compare with the
                // root by counting roots in (lo, u].
                if UniPoly::sturm_count(&self.sturm, &r.lo, u) == 1 {
                    below += 1;
                }
            }
        }
        Some(self.gap_arc[below])
    }

    /// Arc containing the point at infinity (-eps, 0), when off the curve.
    pub fn arc_at_infinity(&self) -> Option<usize> {
        self.infinity_arc
    }
}

/// Restrict f to the circle of radius eps as a polynomial in the rational
/// parameter u, scaled by the positive factor (1+u^2)^deg(f).
fn circle_restriction(f: &BivarPoly, eps: &Rat) -> UniPoly {
    let d = f.total_degree().expect("nonzero polynomial");
    let one_minus = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), -Rat::one()]);
    let two_u = UniPoly::from_coeffs(vec![Rat::zero(), rat_int(2)]);
    let one_plus = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), Rat::one()]);
    let mut acc = UniPoly::zero();
    for (&(a, b), c) in f.terms() {
        let mut pow_eps = Rat::one();
        for _ in 0..(a + b) {
            pow_eps *= eps.clone();
        }
        let mut term = UniPoly::constant(c.clone() * pow_eps);
        for _ in 0..a {
            term = term.mul(&one_minus);
        }
        for _ in 0..b {
            term = term.mul(&two_u);
        }
        for _ in 0..(d - a - b) {
            term = term.mul(&one_plus);
        }
        acc = acc.add(&term);
    }
    acc
}

/// Compute the cyclic sign word of f on the circle z^2 + t^2 = eps^2.
pub fn circle_sign_arcs(f: &BivarPoly, eps: &Rat) -> Result<CircleArcs, PlaneError> {
    if f.is_zero() {
        return Err(PlaneError::EmptyInput);
    }
    assert!(eps.is_positive(), "circle radius must be positive");
    let d = f.total_degree().unwrap();
    let p = circle_restriction(f, eps).primitive();
    if p.is_zero() {
        return Err(PlaneError::DegenerateCircle);
    }
    let roots = isolate_real_roots(&p)?;
    let squarefree = p.squarefree_part().primitive();
    let sturm = squarefree.sturm_chain();
    let inf_mult = 2 * d as usize - p.degree().unwrap();
    let inf_root = inf_mult > 0;
    let inf_odd = inf_mult % 2 == 1;
    let mut touched = inf_root && !inf_odd;
    let mut crossings = if inf_odd { 1 } else { 0 };
    for r in &roots {
        if r.odd {
            crossings += 1;
        } else {
            touched = true;
        }
    }
    // Sample points per gap between consecutive roots (plus both tails).
    let k = roots.len();
    let mut samples: Vec<Rat> = Vec::with_capacity(k + 1);
    if k == 0 {
        samples.push(Rat::zero());
    } else {
        samples.push(roots[0].lo.clone() - Rat::one());
        for i in 0..k - 1 {
            let a = &roots[i].hi;
            let b = &roots[i + 1].lo;
            let s = if a == b {
                a.clone()
            } else {
                (a.clone() + b.clone()) / rat_int(2)
            };
            samples.push(s);
        }
        samples.push(roots[k - 1].hi.clone() + Rat::one());
    }
    let signs: Vec<Sign> = samples
        .iter()
        .map(|s| Sign::of(&p.eval(s)).expect("sample point off the curve"))
        .collect();

    let mut arcs: Vec<Arc> = Vec::new();
    let mut gap_arc = vec![0usize; k + 1];
    let mut infinity_arc = None;
    if k == 0 && !inf_root {
        arcs.push(Arc {
            sign: signs[0],
            sample: samples[0].clone(),
        });
        infinity_arc = Some(0);
    } else if !inf_root {
        // The two tails join through infinity into one arc.
        debug_assert_eq!(signs[0], signs[k], "no root at infinity but tail signs differ");
        arcs.push(Arc {
            sign: signs[k],
            sample: samples[k].clone(),
        });
        gap_arc[0] = 0;
        gap_arc[k] = 0;
        infinity_arc = Some(0);
        for i in 1..k {
            arcs.push(Arc {
                sign: signs[i],
                sample: samples[i].clone(),
            });
            gap_arc[i] = arcs.len() - 1;
        }
    } else {
        for i in 0..=k {
            arcs.push(Arc {
                sign: signs[i],
                sample: samples[i].clone(),
            });
            gap_arc[i] = i;
        }
    }
    Ok(CircleArcs {
        epsilon: eps.clone(),
        arcs,
        crossings,
        touched,
        roots,
        gap_arc,
        infinity_arc,
        sturm,
        squarefree,
    })
}

/// Circle sign-arc analysis of a germ, stabilized over shrinking radii.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchReport {
    /// Count of maximal negative arcs on a stably small circle.
    pub m: usize,
    /// Set exactly when the germ has constant sign off the origin.
    pub definite_sign: Option<Sign>,
    /// The dyadic radius at which the arc data stabilized.
    pub epsilon_used: Rat,
    /// Cyclic sign word at that radius.
    pub word: Vec<Sign>,
    /// Number of circle crossings at that radius.
    pub crossings: usize,
}

/// Dyadic radius 2^-k.
pub fn dyadic(k: u32) -> Rat {
    rat(1, 1i64 << k)
}

const EPSILON_SCHEDULE_START: u32 = 4;
const EPSILON_SCHEDULE_END: u32 = 24;

/// Stabilized negative-arc analysis of a germ f(z, t).
///
/// Radii 2^-4, 2^-5, ... are tried until two consecutive clean circles agree
/// on the full sign word; tangent circles are skipped. Failure to stabilize
/// by 2^-24 is reported, never silently guessed.
pub fn branch_report(f: &BivarPoly) -> Result<BranchReport, PlaneError> {
    if f.is_zero() {
        return Err(PlaneError::EmptyInput);
    }
    let c0 = f.coeff((0, 0));
    if !c0.is_zero() {
        return Ok(BranchReport {
            m: 0,
            definite_sign: Sign::of(&c0),
            epsilon_used: dyadic(EPSILON_SCHEDULE_START),
            word: vec![Sign::of(&c0).unwrap()],
            crossings: 0,
        });
    }
    let mut previous: Option<(usize, Vec<Sign>, usize, Rat)> = None;
    for k in EPSILON_SCHEDULE_START..=EPSILON_SCHEDULE_END {
        let eps = dyadic(k);
        let arcs = match circle_sign_arcs(f, &eps) {
            Ok(a) => a,
            Err(PlaneError::DegenerateCircle) => continue,
            Err(e) => return Err(e),
        };
        if arcs.touched {
            previous = None;
            continue;
        }
        // Without crossings the circle is one definite arc; the branch count
        // m tallies bounded negative arcs only.
        let m = if arcs.crossings == 0 {
            0
        } else {
            arcs.negative_arcs()
        };
        let word = arcs.sign_word();
        let crossings = arcs.crossings;
        if let Some((pm, pword, pcross, _)) = &previous {
            if *pm == m && *pword == word && *pcross == crossings {
                let definite_sign = if crossings == 0 {
                    Some(word[0])
                } else {
                    None
                };
                return Ok(BranchReport {
                    m,
                    definite_sign,
                    epsilon_used: eps,
                    word,
                    crossings,
                });
            }
        }
        previous = Some((m, word, crossings, eps));
    }
    Err(PlaneError::Unstable {
        last_k: EPSILON_SCHEDULE_END,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::rat_int;

    fn term(a: u32, b: u32, c: i64) -> ((u32, u32), Rat) {
        ((a, b), rat_int(c))
    }

    #[test]
    fn quadrant_signs() {
        // f = z t: four arcs, two negative, for any radius.
        let f = BivarPoly::from_terms([term(1, 1, 1)]);
        let arcs = circle_sign_arcs(&f, &rat(1, 4)).unwrap();
        assert_eq!(arcs.arcs.len(), 4);
        assert_eq!(arcs.crossings, 4);
        assert_eq!(arcs.negative_arcs(), 2);
        let word = arcs.sign_word();
        let flips = word
            .iter()
            .zip(word.iter().cycle().skip(1))
            .take(word.len())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(flips % 2, 0, "cyclic sign changes must be even");
    }

    #[test]
    fn positive_definite() {
        let f = BivarPoly::from_terms([term(2, 0, 1), term(0, 2, 1)]);
        let arcs = circle_sign_arcs(&f, &rat(1, 16)).unwrap();
        assert_eq!(arcs.arcs.len(), 1);
        assert_eq!(arcs.negative_arcs(), 0);
        assert_eq!(arcs.arcs[0].sign, Sign::Plus);
    }

    #[test]
    fn cusp_arcs() {
        // z^3 - t^2 at radius 1/16: two crossings, one negative arc.
        let f = BivarPoly::from_terms([term(3, 0, 1), term(0, 2, -1)]);
        let arcs = circle_sign_arcs(&f, &rat(1, 16)).unwrap();
        assert_eq!(arcs.crossings, 2);
        assert_eq!(arcs.negative_arcs(), 1);
    }

    #[test]
    fn branch_quadrants() {
        let f = BivarPoly::from_terms([term(1, 1, 1)]);
        let r = branch_report(&f).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.definite_sign, None);
    }

    #[test]
    fn branch_negative_definite() {
        // -(z^2 + t^4)
        let f = BivarPoly::from_terms([term(2, 0, -1), term(0, 4, -1)]);
        let r = branch_report(&f).unwrap();
        assert_eq!(r.m, 0);
        assert_eq!(r.definite_sign, Some(Sign::Minus));
    }

    #[test]
    fn branch_cusp() {
        let f = BivarPoly::from_terms([term(3, 0, 1), term(0, 2, -1)]);
        let r = branch_report(&f).unwrap();
        assert_eq!(r.m, 1);
    }

    #[test]
    fn branch_scaling_invariance() {
        // Positive scaling preserves the report; negation swaps arc signs.
        let f = BivarPoly::from_terms([term(1, 1, 1), term(3, 0, 1)]);
        let rf = branch_report(&f).unwrap();
        let rs = branch_report(&f.scale(&rat(7, 3))).unwrap();
        assert_eq!(rf, rs);
        let rn = branch_report(&f.neg()).unwrap();
        let pos_arcs = rf.word.iter().filter(|s| **s == Sign::Plus).count();
        assert_eq!(rn.m, pos_arcs);
    }

    #[test]
    fn branch_nonreduced_is_unstable() {
        // z^2 t: the doubled line never yields a clean circle.
        let f = BivarPoly::from_terms([term(2, 1, 1)]);
        assert!(matches!(
            branch_report(&f),
            Err(PlaneError::Unstable { .. })
        ));
    }

    #[test]
    fn arc_point_location() {
        let f = BivarPoly::from_terms([term(1, 1, 1)]);
        let arcs = circle_sign_arcs(&f, &rat(1, 4)).unwrap();
        // u = 1 is the point (0, eps) on the positive t-half-axis where zt = 0.
        assert_eq!(arcs.arc_containing(&rat_int(1)), None);
        // u = 1/2 lies in the open first quadrant where zt > 0.
        let idx = arcs.arc_containing(&rat(1, 2)).unwrap();
        assert_eq!(arcs.arcs[idx].sign, Sign::Plus);
        // u = -1/2: second quadrant in t, z > 0, t < 0: negative.
        let idx = arcs.arc_containing(&rat(-1, 2)).unwrap();
        assert_eq!(arcs.arcs[idx].sign, Sign::Minus);
    }
}
