//! Ternary forms in (y, z, t) and the square-divisor analysis of the cubic
//! part, which discriminates the cD4 / cD>4 / cE branches.

use crate::jet::{Jet, Monomial, Rat, Var};
use crate::plane::BivarPoly;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Polynomial in (y, z, t), keyed by exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), Rat>,
}

impl TriPoly {
    pub fn zero() -> TriPoly {
        TriPoly::default()
    }

    pub fn from_jet(f: &Jet) -> Option<TriPoly> {
        let mut p = TriPoly::zero();
        for (m, c) in f.terms() {
            if m.exponent(Var::X) != 0 {
                return None;
            }
            p.add_term(
                (m.exponent(Var::Y), m.exponent(Var::Z), m.exponent(Var::T)),
                c.clone(),
            );
        }
        Some(p)
    }

    pub fn to_jet(&self, order: u32) -> Jet {
        Jet::from_terms(
            self.terms
                .iter()
                .map(|(&(a, b, c), v)| (Monomial([0, a, b, c]), v.clone())),
            order,
        )
    }

    pub fn add_term(&mut self, m: (u32, u32, u32), c: Rat) {
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

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b, c)| a + b + c).max()
    }

    pub fn scale(&self, c: &Rat) -> TriPoly {
        if c.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.clone() * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TriPoly) -> TriPoly {
        let mut r = TriPoly::zero();
        for (&(a1, b1, c1), v1) in &self.terms {
            for (&(a2, b2, c2), v2) in &other.terms {
                r.add_term((a1 + a2, b1 + b2, c1 + c2), v1.clone() * v2.clone());
            }
        }
        r
    }

    pub fn sub(&self, other: &TriPoly) -> TriPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn derivative(&self, v: Var) -> TriPoly {
        let mut r = TriPoly::zero();
        for (&(a, b, c), coeff) in &self.terms {
            let (e, m) = match v {
                Var::Y => (a, (a.wrapping_sub(1), b, c)),
                Var::Z => (b, (a, b.wrapping_sub(1), c)),
                Var::T => (c, (a, b, c.wrapping_sub(1))),
                Var::X => unreachable!("no x in a ternary form"),
            };
            if e > 0 {
                r.add_term(m, coeff.clone() * crate::jet::rat_int(e as i64));
            }
        }
        r
    }

    /// Leading term in lex order y > z > t.
    fn leading(&self) -> Option<((u32, u32, u32), Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    /// Exact division; None when not divisible.
    pub fn checked_div(&self, divisor: &TriPoly) -> Option<TriPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = TriPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            if rm.0 < dm.0 || rm.1 < dm.1 || rm.2 < dm.2 {
                return None;
            }
            let qm = (rm.0 - dm.0, rm.1 - dm.1, rm.2 - dm.2);
            let qc = rc / dc.clone();
            let mut qterm = TriPoly::zero();
            qterm.add_term(qm, qc);
            quot = quot.add(&qterm);
            rem = rem.sub(&qterm.mul(divisor));
        }
        Some(quot)
    }

    pub fn add(&self, other: &TriPoly) -> TriPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    /// Coefficients of powers of y, each a polynomial in (z, t).
    fn y_rows(&self) -> Vec<BivarPoly> {
        let Some(max_a) = self.terms.keys().map(|(a, _, _)| *a).max() else {
            return vec![];
        };
        let mut rows = vec![BivarPoly::zero(); max_a as usize + 1];
        for (&(a, b, c), v) in &self.terms {
            rows[a as usize].add_term((b, c), v.clone());
        }
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        rows
    }

    fn from_y_rows(rows: Vec<BivarPoly>) -> TriPoly {
        let mut p = TriPoly::zero();
        for (a, row) in rows.into_iter().enumerate() {
            for (&(b, c), v) in row.terms() {
                p.add_term((a as u32, b, c), v.clone());
            }
        }
        p
    }

    /// Gcd over Q[y,z,t] via a primitive pseudo-remainder chain in y with
    /// bivariate contents.
    pub fn gcd(&self, other: &TriPoly) -> TriPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let a = self.y_rows();
        let b = other.y_rows();
        if a.len() == 1 && b.len() == 1 {
            return TriPoly::from_y_rows(vec![a[0].gcd(&b[0])]);
        }
        if a.len() == 1 || b.len() == 1 {
            let (uni, full) = if a.len() == 1 { (&a[0], &b) } else { (&b[0], &a) };
            let mut g = uni.clone();
            for row in full.iter() {
                g = g.gcd(row);
            }
            return TriPoly::from_y_rows(vec![g]);
        }
        let cont = |rows: &[BivarPoly]| -> BivarPoly {
            let mut g = BivarPoly::zero();
            for r in rows {
                g = g.gcd(r);
            }
            g
        };
        let prim = |rows: &[BivarPoly], c: &BivarPoly| -> Vec<BivarPoly> {
            rows.iter()
                .map(|r| {
                    if r.is_zero() {
                        BivarPoly::zero()
                    } else {
                        r.exact_div(c)
                    }
                })
                .collect()
        };
        let ca = cont(&a);
        let cb = cont(&b);
        let cg = ca.gcd(&cb);
        let mut f = prim(&a, &ca);
        let mut g = prim(&b, &cb);
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = pseudo_rem_rows(&f, &g);
            if r.iter().all(|c| c.is_zero()) {
                break;
            }
            let rc = cont(&r);
            f = g;
            g = prim(&r, &rc);
        }
        TriPoly::from_y_rows(g)
            .mul(&TriPoly::from_y_rows(vec![cg]))
    }

    /// The coefficients (c_y, c_z, c_t) when the polynomial is a linear form.
    pub fn as_linear_form(&self) -> Option<[Rat; 3]> {
        if self.total_degree() != Some(1) {
            return None;
        }
        let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
        for (&(a, b, c), v) in &self.terms {
            match (a, b, c) {
                (1, 0, 0) => out[0] = v.clone(),
                (0, 1, 0) => out[1] = v.clone(),
                (0, 0, 1) => out[2] = v.clone(),
                _ => return None,
            }
        }
        Some(out)
    }

    /// Normalize so the leading coefficient (lex y > z > t) is one.
    pub fn monic(&self) -> TriPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Rat::one() / c)),
        }
    }
}

fn pseudo_rem_rows(f: &[BivarPoly], g: &[BivarPoly]) -> Vec<BivarPoly> {
    let dg = g.len() - 1;
    let lead_g = g.last().unwrap().clone();
    let mut rem: Vec<BivarPoly> = f.to_vec();
    while rem.len() > dg && !rem.iter().all(|c| c.is_zero()) {
        if rem.last().unwrap().is_zero() {
            rem.pop();
            continue;
        }
        let dr = rem.len() - 1;
        let lead_r = rem.last().unwrap().clone();
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

/// Square-divisor structure of a nonzero ternary cubic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubicSquareness {
    /// No repeated linear factor.
    Squarefree,
    /// f3 = l1^2 * l2 with independent linear forms; the cofactor carries the
    /// constant so the product is exact.
    DoubleLine { l1: [Rat; 3], cofactor: [Rat; 3] },
    /// f3 = coeff * l^3.
    Cube { l: [Rat; 3], coeff: Rat },
    /// Should not arise for genuine cubic forms; reported, never guessed.
    Degenerate,
}

/// Classify the square-divisor structure of f3 by the degree of
/// gcd(f3, grad f3): 0 squarefree, 1 double line, 2 cube.
pub fn cubic_squareness(f3: &TriPoly) -> CubicSquareness {
    debug_assert_eq!(f3.total_degree(), Some(3));
    let mut g = f3.clone();
    for v in [Var::Y, Var::Z, Var::T] {
        g = g.gcd(&f3.derivative(v));
    }
    match g.total_degree() {
        Some(0) => CubicSquareness::Squarefree,
        Some(1) => {
            let Some(l1) = g.monic().as_linear_form() else {
                return CubicSquareness::Degenerate;
            };
            let l1_tri = linear_tri(&l1);
            let Some(cof) = f3.checked_div(&l1_tri.mul(&l1_tri)) else {
                return CubicSquareness::Degenerate;
            };
            let Some(cofactor) = cof.as_linear_form() else {
                return CubicSquareness::Degenerate;
            };
            CubicSquareness::DoubleLine { l1, cofactor }
        }
        Some(2) => {
            // g is a constant multiple of l^2; extract l from a partial.
            let l = [Var::Y, Var::Z, Var::T]
                .into_iter()
                .map(|v| g.derivative(v))
                .find(|d| !d.is_zero())
                .map(|d| g.gcd(&d).monic());
            let Some(l) = l else {
                return CubicSquareness::Degenerate;
            };
            let Some(lf) = l.as_linear_form() else {
                return CubicSquareness::Degenerate;
            };
            let cube = l.mul(&l).mul(&l);
            let Some(q) = f3.checked_div(&cube) else {
                return CubicSquareness::Degenerate;
            };
            match q.total_degree() {
                Some(0) => {
                    let coeff = q.leading().unwrap().1;
                    CubicSquareness::Cube { l: lf, coeff }
                }
                _ => CubicSquareness::Degenerate,
            }
        }
        _ => CubicSquareness::Degenerate,
    }
}

pub fn linear_tri(l: &[Rat; 3]) -> TriPoly {
    let mut p = TriPoly::zero();
    p.add_term((1, 0, 0), l[0].clone());
    p.add_term((0, 1, 0), l[1].clone());
    p.add_term((0, 0, 1), l[2].clone());
    p
}
