//! Real-factor statistics of binary forms and the squarefree germ check.

use super::bivar::BivarPoly;
use super::uni::{isolate_real_roots, PlaneError, Sign};

use num_traits::Zero;

/// Real linear-factor data of a homogeneous binary form h(z, t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFormReport {
    /// Number of distinct real linear factors (the factor z counted once).
    pub rho: usize,
    /// Multiplicity of each distinct real linear factor, z's first when present.
    pub multiplicities: Vec<u32>,
    /// Whether every real linear factor is simple.
    pub squarefree: bool,
    pub divisible_by_z: bool,
    /// Sign of h(0, 1); None exactly when z divides h.
    pub sign_at_0_1: Option<Sign>,
}

/// Count distinct real linear factors of a binary form with multiplicities.
///
/// The factors other than z correspond to real roots of h(1, t); the
/// z-multiplicity is the exact power of z dividing h.
pub fn binary_form_report(h: &BivarPoly) -> Result<BinaryFormReport, PlaneError> {
    if h.is_zero() {
        return Err(PlaneError::EmptyInput);
    }
    assert!(h.is_homogeneous(), "binary_form_report needs a form");
    let degree = h.total_degree().unwrap();
    let z_mult = h.z_multiplicity();
    let mut multiplicities = Vec::new();
    if z_mult >= 1 {
        multiplicities.push(z_mult);
    }
    let section = h.section_z1();
    if section.degree().unwrap_or(0) > 0 {
        for (factor, mult) in section.squarefree_decomposition() {
            let real_roots = isolate_real_roots(&factor)?.len();
            for _ in 0..real_roots {
                multiplicities.push(mult);
            }
        }
    }
    let rho = multiplicities.len();
    debug_assert!(multiplicities.iter().map(|&m| m as u64).sum::<u64>() <= degree as u64);
    let sign_at_0_1 = Sign::of(&h.coeff((0, degree)));
    debug_assert_eq!(sign_at_0_1.is_none(), z_mult >= 1);
    Ok(BinaryFormReport {
        rho,
        squarefree: multiplicities.iter().all(|&m| m == 1),
        multiplicities,
        divisible_by_z: z_mult >= 1,
        sign_at_0_1,
    })
}

/// Outcome of the partial isolatedness test on a plane germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquarefreeCheck {
    Verified,
    /// A nonunit common factor of (f, df/dz, df/dt).
    Refuted(BivarPoly),
}

/// Squarefreeness of a bivariate germ via subresultant gcds with both
/// partials; a nonconstant common factor witnesses a non-reduced germ.
pub fn squarefree_germ_check(f: &BivarPoly) -> Result<SquarefreeCheck, PlaneError> {
    if f.is_zero() {
        return Err(PlaneError::EmptyInput);
    }
    let g = f.gcd(&f.derivative_z()).gcd(&f.derivative_t());
    if g.total_degree().unwrap_or(0) >= 1 {
        Ok(SquarefreeCheck::Refuted(g))
    } else {
        Ok(SquarefreeCheck::Verified)
    }
}

/// Sign of a univariate germ p(eps) for small eps of the given sign, read
/// off the lowest-order term. None for the zero polynomial.
pub fn germ_sign_along(p: &super::uni::UniPoly, positive_side: bool) -> Option<Sign> {
    let (k, c) = p
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())?;
    let base = Sign::of(c).unwrap();
    if positive_side || k % 2 == 0 {
        Some(base)
    } else {
        Some(base.flip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{rat_int, Rat};

    fn term(a: u32, b: u32, c: i64) -> ((u32, u32), Rat) {
        ((a, b), rat_int(c))
    }

    fn lines() -> (BivarPoly, BivarPoly, BivarPoly, BivarPoly) {
        let z = BivarPoly::from_terms([term(1, 0, 1)]);
        let t = BivarPoly::from_terms([term(0, 1, 1)]);
        let zmt = BivarPoly::from_terms([term(1, 0, 1), term(0, 1, -1)]);
        let zpt = BivarPoly::from_terms([term(1, 0, 1), term(0, 1, 1)]);
        (z, t, zmt, zpt)
    }

    #[test]
    fn four_lines() {
        let (z, t, zmt, zpt) = lines();
        let h = z.mul(&t).mul(&zmt).mul(&zpt);
        let r = binary_form_report(&h).unwrap();
        assert_eq!(r.rho, 4);
        assert!(r.squarefree);
        assert!(r.divisible_by_z);
        assert_eq!(r.sign_at_0_1, None);
    }

    #[test]
    fn spread_quartic() {
        // (z^2 - t^2)(z^2 - 4 t^2): four simple real factors, h(0,1) = 4 > 0.
        let a = BivarPoly::from_terms([term(2, 0, 1), term(0, 2, -1)]);
        let b = BivarPoly::from_terms([term(2, 0, 1), term(0, 2, -4)]);
        let h = a.mul(&b);
        let r = binary_form_report(&h).unwrap();
        assert_eq!(r.rho, 4);
        assert!(r.squarefree);
        assert!(!r.divisible_by_z);
        assert_eq!(r.sign_at_0_1, Some(Sign::Plus));
    }

    #[test]
    fn definite_quartic() {
        let h = BivarPoly::from_terms([term(4, 0, 1), term(0, 4, 1)]);
        let r = binary_form_report(&h).unwrap();
        assert_eq!(r.rho, 0);
        assert_eq!(r.sign_at_0_1, Some(Sign::Plus));
    }

    #[test]
    fn multiplicities_recorded() {
        // z^2 t^2 (z - t): factors z^2, t^2, (z-t).
        let (z, t, zmt, _) = lines();
        let h = z.mul(&z).mul(&t).mul(&t).mul(&zmt);
        let r = binary_form_report(&h).unwrap();
        assert_eq!(r.rho, 3);
        assert!(!r.squarefree);
        let mut sorted = r.multiplicities.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 2]);
    }

    #[test]
    fn germ_check_square() {
        let (z, t, zmt, zpt) = lines();
        let f = z.mul(&z).mul(&t);
        match squarefree_germ_check(&f).unwrap() {
            SquarefreeCheck::Refuted(w) => {
                let ratio = w.coeff((1, 0));
                assert_eq!(w, z.scale(&ratio), "witness should be the line z");
            }
            SquarefreeCheck::Verified => panic!("z^2 t must be refuted"),
        }
        let g = zmt.mul(&zmt).mul(&zpt);
        assert!(matches!(
            squarefree_germ_check(&g).unwrap(),
            SquarefreeCheck::Refuted(_)
        ));
    }

    #[test]
    fn germ_check_cusp() {
        let f = BivarPoly::from_terms([term(2, 0, 1), term(0, 3, 1)]);
        assert_eq!(
            squarefree_germ_check(&f).unwrap(),
            SquarefreeCheck::Verified
        );
    }

    #[test]
    fn germ_sign_sides() {
        use super::super::uni::UniPoly;
        // -eps^3: negative on the positive side, positive on the negative side.
        let p = UniPoly::monomial(rat_int(-1), 3);
        assert_eq!(germ_sign_along(&p, true), Some(Sign::Minus));
        assert_eq!(germ_sign_along(&p, false), Some(Sign::Plus));
        let q = UniPoly::monomial(rat_int(-1), 4);
        assert_eq!(germ_sign_along(&q, false), Some(Sign::Minus));
    }
}
