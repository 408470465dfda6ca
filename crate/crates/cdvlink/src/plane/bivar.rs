//! Exact bivariate polynomials in (z, t), the carrier of all plane-curve
//! germ analysis. Gcds run through primitive pseudo-remainder chains, never
//! through factorization into irreducibles.

use super::uni::UniPoly;
use crate::jet::{Jet, Rat, Var};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in z and t with rational coefficients, keyed by
/// (z-exponent, t-exponent).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BivarPoly {
    pub fn zero() -> BivarPoly {
        BivarPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> BivarPoly {
        let mut p = BivarPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Extract from a jet that involves only z and t.
    pub fn from_jet(f: &Jet) -> Option<BivarPoly> {
        let mut p = BivarPoly::zero();
        for (m, c) in f.terms() {
            if m.exponent(Var::X) != 0 || m.exponent(Var::Y) != 0 {
                return None;
            }
            p.add_term((m.exponent(Var::Z), m.exponent(Var::T)), c.clone());
        }
        Some(p)
    }

    pub fn to_jet(&self, order: u32) -> Jet {
        Jet::from_terms(
            self.terms
                .iter()
                .map(|(&(a, b), c)| (crate::jet::mono(0, 0, a, b), c.clone())),
            order,
        )
    }

    pub fn add_term(&mut self, m: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: (u32, u32)) -> Rat {
        self.terms.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.multiplicity() == self.total_degree()
    }

    pub fn homogeneous_part(&self, d: u32) -> BivarPoly {
        BivarPoly::from_terms(
            self.terms
                .iter()
                .filter(|((a, b), _)| a + b == d)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> BivarPoly {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.clone() * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let mut r = BivarPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                r.add_term((a1 + a2, b1 + b2), c1.clone() * c2.clone());
            }
        }
        r
    }

    pub fn derivative_z(&self) -> BivarPoly {
        let mut r = BivarPoly::zero();
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                r.add_term((a - 1, b), c.clone() * crate::jet::rat_int(a as i64));
            }
        }
        r
    }

    pub fn derivative_t(&self) -> BivarPoly {
        let mut r = BivarPoly::zero();
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                r.add_term((a, b - 1), c.clone() * crate::jet::rat_int(b as i64));
            }
        }
        r
    }

    pub fn eval(&self, z: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..a {
                v *= z.clone();
            }
            for _ in 0..b {
                v *= t.clone();
            }
            acc += v;
        }
        acc
    }

    /// Restriction f(0, t) as a univariate polynomial in t.
    pub fn section_z0(&self) -> UniPoly {
        let max_b = self
            .terms
            .keys()
            .filter(|(a, _)| *a == 0)
            .map(|(_, b)| *b)
            .max();
        let Some(max_b) = max_b else {
            return UniPoly::zero();
        };
        let mut coeffs = vec![Rat::zero(); max_b as usize + 1];
        for (&(a, b), c) in &self.terms {
            if a == 0 {
                coeffs[b as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Restriction f(z, 0) as a univariate polynomial in z.
    pub fn section_t0(&self) -> UniPoly {
        let max_a = self
            .terms
            .keys()
            .filter(|(_, b)| *b == 0)
            .map(|(a, _)| *a)
            .max();
        let Some(max_a) = max_a else {
            return UniPoly::zero();
        };
        let mut coeffs = vec![Rat::zero(); max_a as usize + 1];
        for (&(a, b), c) in &self.terms {
            if b == 0 {
                coeffs[a as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Substitution f(1, t) as a univariate polynomial in t.
    pub fn section_z1(&self) -> UniPoly {
        let max_b = self.terms.keys().map(|(_, b)| *b).max();
        let Some(max_b) = max_b else {
            return UniPoly::zero();
        };
        let mut coeffs = vec![Rat::zero(); max_b as usize + 1];
        for (&(_, b), c) in &self.terms {
            coeffs[b as usize] += c.clone();
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// z-exponent of the exact z-power dividing the polynomial.
    pub fn z_multiplicity(&self) -> u32 {
        self.terms.keys().map(|(a, _)| *a).min().unwrap_or(0)
    }

    /// View as a polynomial in z with univariate coefficients in t,
    /// ascending z-degree.
    pub fn z_coefficients(&self) -> Vec<UniPoly> {
        let Some(max_a) = self.terms.keys().map(|(a, _)| *a).max() else {
            return vec![];
        };
        let mut rows: Vec<Vec<Rat>> = vec![vec![]; max_a as usize + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut rows[a as usize];
            if row.len() <= b as usize {
                row.resize(b as usize + 1, Rat::zero());
            }
            row[b as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_z_coefficients(rows: Vec<UniPoly>) -> BivarPoly {
        let mut p = BivarPoly::zero();
        for (a, row) in rows.into_iter().enumerate() {
            for (b, c) in row.coeffs().iter().enumerate() {
                p.add_term((a as u32, b as u32), c.clone());
            }
        }
        p
    }

    pub fn degree_z(&self) -> Option<u32> {
        self.terms.keys().map(|(a, _)| *a).max()
    }

    /// Exact division; panics if the division is not exact.
    pub fn exact_div(&self, divisor: &BivarPoly) -> BivarPoly {
        assert!(!divisor.is_zero());
        let mut rem = self.clone();
        let mut quot = BivarPoly::zero();
        // Leading term by (z-degree, t-degree) lex order.
        let lead = |p: &BivarPoly| -> ((u32, u32), Rat) {
            let (&m, c) = p.terms.iter().next_back().unwrap();
            (m, c.clone())
        };
        let (dm, dc) = lead(divisor);
        while !rem.is_zero() {
            let (rm, rc) = lead(&rem);
            assert!(
                rm.0 >= dm.0 && rm.1 >= dm.1,
                "division is not exact: {self} by {divisor}"
            );
            let qm = (rm.0 - dm.0, rm.1 - dm.1);
            let qc = rc / dc.clone();
            let qterm = BivarPoly::from_terms([(qm, qc)]);
            quot = quot.add(&qterm);
            rem = rem.sub(&qterm.mul(divisor));
        }
        quot
    }

    /// Gcd over Q[z,t] via content-primitive pseudo-remainder chains in z.
    pub fn gcd(&self, other: &BivarPoly) -> BivarPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let a = self.z_coefficients();
        let b = other.z_coefficients();
        if a.len() == 1 || b.len() == 1 {
            // One side is a polynomial in t alone: gcd is the univariate gcd
            // of it with the t-content of the other.
            let (uni, full) = if a.len() == 1 {
                (a[0].clone(), &b)
            } else {
                (b[0].clone(), &a)
            };
            let mut g = uni;
            for row in full.iter() {
                g = g.gcd(row);
                if g.degree() == Some(0) {
                    return BivarPoly::from_terms([((0, 0), Rat::one())]);
                }
            }
            return BivarPoly::from_z_coefficients(vec![g]);
        }
        let cont_a = content(&a);
        let cont_b = content(&b);
        let cont_gcd = cont_a.gcd(&cont_b);
        let pa = primitive(&a, &cont_a);
        let pb = primitive(&b, &cont_b);
        let mut f = if pa.len() >= pb.len() { pa.clone() } else { pb.clone() };
        let mut g = if pa.len() >= pb.len() { pb } else { pa };
        loop {
            let r = pseudo_rem(&f, &g);
            if r.iter().all(|c| c.is_zero()) {
                break;
            }
            let rc = content(&r);
            f = g;
            g = primitive(&r, &rc);
        }
        let gcd_z = BivarPoly::from_z_coefficients(g);
        gcd_z.mul(&BivarPoly::from_z_coefficients(vec![cont_gcd]))
    }
}

fn content(rows: &[UniPoly]) -> UniPoly {
    let mut g = UniPoly::zero();
    for r in rows {
        g = g.gcd(r);
    }
    g
}

fn primitive(rows: &[UniPoly], cont: &UniPoly) -> Vec<UniPoly> {
    rows.iter()
        .map(|r| {
            if r.is_zero() {
                UniPoly::zero()
            } else {
                let (q, rem) = r.divrem(cont);
                debug_assert!(rem.is_zero());
                q
            }
        })
        .collect()
}

/// Pseudo-remainder of f by g, both as z-coefficient vectors over Q[t].
fn pseudo_rem(f: &[UniPoly], g: &[UniPoly]) -> Vec<UniPoly> {
    let dg = g.len() - 1;
    let lead_g = g.last().unwrap().clone();
    let mut rem: Vec<UniPoly> = f.to_vec();
    while rem.len() > dg && !rem.iter().all(|c| c.is_zero()) {
        if rem.last().unwrap().is_zero() {
            rem.pop();
            continue;
        }
        let dr = rem.len() - 1;
        let lead_r = rem.last().unwrap().clone();
        // rem = lead_g * rem - lead_r * z^(dr-dg) * g
        for c in rem.iter_mut() {
            *c = c.mul(&lead_g);
        }
        for i in 0..=dg {
            let delta = lead_r.mul(&g[i]);
            rem[dr - dg + i] = rem[dr - dg + i].sub(&delta);
        }
        rem.pop();
    }
    rem
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_jet(u32::MAX - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{rat_int, Rat};

    fn term(a: u32, b: u32, c: i64) -> ((u32, u32), Rat) {
        ((a, b), rat_int(c))
    }

    #[test]
    fn gcd_with_common_line() {
        // (z - t)^2 (z + t) and its z-derivative share z - t.
        let zmt = BivarPoly::from_terms([term(1, 0, 1), term(0, 1, -1)]);
        let zpt = BivarPoly::from_terms([term(1, 0, 1), term(0, 1, 1)]);
        let f = zmt.mul(&zmt).mul(&zpt);
        let g = f.gcd(&f.derivative_z());
        // gcd should be a rational multiple of z - t.
        assert_eq!(g.total_degree(), Some(1));
        let ratio = g.coeff((1, 0)) / zmt.coeff((1, 0));
        assert_eq!(g, zmt.scale(&ratio));
    }

    #[test]
    fn gcd_coprime() {
        let f = BivarPoly::from_terms([term(2, 0, 1), term(0, 3, 1)]); // z^2 + t^3
        let g = f.derivative_z().gcd(&f.derivative_t());
        assert_eq!(g.total_degree(), Some(0));
    }

    #[test]
    fn exact_division_round_trip() {
        let f = BivarPoly::from_terms([term(1, 0, 2), term(0, 1, 3), term(0, 0, 0)]);
        let g = BivarPoly::from_terms([term(1, 1, 1), term(2, 0, -5), term(0, 2, 7)]);
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&f), g);
        assert_eq!(prod.exact_div(&g), f);
    }

    #[test]
    fn sections() {
        let f = BivarPoly::from_terms([term(2, 1, 4), term(0, 3, -2), term(1, 0, 1)]);
        assert_eq!(f.section_z0(), UniPoly::monomial(rat_int(-2), 3));
        assert_eq!(f.z_multiplicity(), 0);
        let g = f.mul(&BivarPoly::from_terms([term(1, 0, 1)]));
        assert_eq!(g.z_multiplicity(), 1);
    }
}
