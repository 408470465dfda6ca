//! Exact truncated power-series arithmetic in the variables x, y, z, t.
//!
//! A [`Jet`] is a polynomial over arbitrary-precision rationals truncated at a
//! fixed total degree. All coordinate changes used by the classifier
//! (substitution, unit inversion, weighted decomposition, Jacobian-ideal
//! elimination) are built on this type and are exact in every retained degree.

pub mod reduce;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational coefficient type.
pub type Rat = BigRational;

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    Rat::from(BigInt::from(num))
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum JetError {
    /// A substitution image had a nonzero constant term.
    #[error("substitution image for {var} has a nonzero constant term")]
    GermViolation { var: Var },
    /// Inversion of a series whose constant term vanishes.
    #[error("series has zero constant term and is not a unit")]
    NotAUnit,
    /// An operation that needs a nonzero input got zero.
    #[error("input is the zero series")]
    EmptyInput,
}

/// The four ambient variables, in the fixed order x > y > z > t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    T = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::T => 't',
        }
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exponent vector over (x, y, z, t).
///
/// Ordered by graded lexicographic order with x > y > z > t; this order fixes
/// elimination pivots and printing, so transform logs are deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial([0; 4])
    }

    pub fn var(v: Var) -> Monomial {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0; 4];
        for i in 0..4 {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }

    /// Whether `other` divides `self`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        (0..4).all(|i| self.0[i] >= other.0[i])
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut e = [0; 4];
        for i in 0..4 {
            e[i] = self.0[i] - other.0[i];
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// Positive integer weights per variable, defining a weighted degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightVector(pub [u32; 4]);

impl WeightVector {
    pub fn new(w: [u32; 4]) -> WeightVector {
        assert!(w.iter().all(|&wi| wi >= 1), "weights must be >= 1");
        WeightVector(w)
    }

    pub fn uniform() -> WeightVector {
        WeightVector([1; 4])
    }

    pub fn weight(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        (0..4).map(|i| m.0[i] as u64 * self.0[i] as u64).sum()
    }
}

/// Cyclic grading 1/n(a_x, a_y, a_z, a_t).
///
/// Grades are stored as arbitrary integer representatives; `grade_mod` reduces
/// into [0, n) and `grade_int` gives the plain integer weight computed from
/// representatives reduced into [0, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedWeights {
    pub modulus: u32,
    pub grades: [i64; 4],
}

impl GradedWeights {
    pub fn new(modulus: u32, grades: [i64; 4]) -> GradedWeights {
        assert!(modulus >= 2, "grading modulus must be >= 2");
        GradedWeights { modulus, grades }
    }

    /// Grade of a variable reduced into [0, n).
    pub fn grade_of_var(&self, v: Var) -> u32 {
        let n = self.modulus as i64;
        (self.grades[v.index()].rem_euclid(n)) as u32
    }

    /// Plain integer weight of a monomial, using representatives in [0, n).
    pub fn grade_int(&self, m: &Monomial) -> u64 {
        (0..4)
            .map(|i| m.0[i] as u64 * self.grade_of_var(Var::from_index(i)) as u64)
            .sum()
    }

    /// Grade of a monomial in Z_n.
    pub fn grade_mod(&self, m: &Monomial) -> u32 {
        (self.grade_int(m) % self.modulus as u64) as u32
    }
}

/// Truncated power series: finite map monomial -> nonzero rational, with all
/// stored monomials of total degree <= `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    terms: BTreeMap<Monomial, Rat>,
    order: u32,
}

impl Jet {
    pub fn zero(order: u32) -> Jet {
        assert!(order >= 1);
        Jet {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn constant(c: Rat, order: u32) -> Jet {
        let mut j = Jet::zero(order);
        j.add_term(Monomial::one(), c);
        j
    }

    pub fn one(order: u32) -> Jet {
        Jet::constant(Rat::one(), order)
    }

    pub fn var(v: Var, order: u32) -> Jet {
        let mut j = Jet::zero(order);
        j.add_term(Monomial::var(v), Rat::one());
        j
    }

    pub fn monomial(m: Monomial, c: Rat, order: u32) -> Jet {
        let mut j = Jet::zero(order);
        j.add_term(m, c);
        j
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>, order: u32) -> Jet {
        let mut j = Jet::zero(order);
        for (m, c) in terms {
            j.add_term(m, c);
        }
        j
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate terms in increasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    /// Add `c * m`, dropping the term if it exceeds the truncation order or
    /// the coefficient cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() || m.degree() > self.order {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Lowest total degree with a nonzero term (multiplicity at the origin).
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Homogeneous part of total degree d.
    pub fn homogeneous_part(&self, d: u32) -> Jet {
        Jet::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone())),
            self.order,
        )
    }

    /// Terms of total degree >= d.
    pub fn part_from_degree(&self, d: u32) -> Jet {
        Jet::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() >= d)
                .map(|(m, c)| (*m, c.clone())),
            self.order,
        )
    }

    /// Re-truncate to a (possibly lower) order.
    pub fn truncated(&self, order: u32) -> Jet {
        let mut j = Jet::zero(order);
        for (m, c) in &self.terms {
            j.add_term(*m, c.clone());
        }
        j
    }

    /// Same terms, carried at a higher truncation order. The tail between the
    /// old and new order is unknown for genuine series; callers record this.
    pub fn with_order(&self, order: u32) -> Jet {
        let mut j = Jet::zero(order);
        for (m, c) in &self.terms {
            j.add_term(*m, c.clone());
        }
        j
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Jet {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Jet {
        if c.is_zero() {
            return Jet::zero(self.order);
        }
        Jet {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.clone() * c))
                .collect(),
            order: self.order,
        }
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let order = self.order.min(other.order);
        let mut r = Jet::zero(order);
        for (ma, ca) in &self.terms {
            if ma.degree() > order {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > order {
                    continue;
                }
                r.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Jet {
        let mut r = Jet::one(self.order);
        for _ in 0..e {
            r = r.mul(self);
            if r.is_zero() {
                break;
            }
        }
        r
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Jet {
        let mut r = Jet::zero(self.order);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[v.index()] -= 1;
            r.add_term(dm, c.clone() * rat_int(e as i64));
        }
        r
    }

    /// Substitute each variable by the corresponding image series.
    ///
    /// Images must have zero constant term so the composite is again a germ at
    /// the origin; the result is exact through the truncation order.
    pub fn substitute(&self, images: &[Jet; 4]) -> Result<Jet, JetError> {
        for v in Var::ALL {
            if !images[v.index()].constant_term().is_zero() {
                return Err(JetError::GermViolation { var: v });
            }
        }
        let order = self.order;
        // Powers of each image, computed on demand.
        let mut powers: [Vec<Jet>; 4] = [
            vec![Jet::one(order)],
            vec![Jet::one(order)],
            vec![Jet::one(order)],
            vec![Jet::one(order)],
        ];
        let power = |v: usize, e: u32, powers: &mut [Vec<Jet>; 4]| -> Jet {
            while powers[v].len() <= e as usize {
                let last = powers[v].last().unwrap().clone();
                powers[v].push(last.mul(&images[v].truncated(order)));
            }
            powers[v][e as usize].clone()
        };
        let mut r = Jet::zero(order);
        for (m, c) in &self.terms {
            // Image of a monomial with multiplicity >= its degree; skip when
            // it cannot contribute below the truncation order.
            let min_deg: u32 = (0..4)
                .map(|i| {
                    let e = m.0[i];
                    if e == 0 {
                        0
                    } else {
                        e * images[i].multiplicity().unwrap_or(order + 1)
                    }
                })
                .sum();
            if min_deg > order {
                continue;
            }
            let mut term = Jet::constant(c.clone(), order);
            for i in 0..4 {
                if m.0[i] > 0 {
                    term = term.mul(&power(i, m.0[i], &mut powers));
                    if term.is_zero() {
                        break;
                    }
                }
            }
            r = r.add(&term);
        }
        Ok(r)
    }

    /// Substitute x_v -> x_v + g by the terminating Taylor expansion
    /// sum_j (d_v^j F / j!) g^j; equal to the full substitution but far
    /// cheaper when g has high multiplicity.
    pub fn shift_var(&self, v: Var, g: &Jet) -> Result<Jet, JetError> {
        if g.is_zero() {
            return Ok(self.clone());
        }
        if !g.constant_term().is_zero() {
            return Err(JetError::GermViolation { var: v });
        }
        let order = self.order();
        let gmult = g.multiplicity().unwrap().max(1);
        let mut acc = self.clone();
        let mut deriv = self.clone();
        let mut gpow = Jet::one(order);
        let mut j: u32 = 1;
        while j * gmult <= order {
            deriv = deriv.derivative(v).scale(&rat(1, j as i64));
            if deriv.is_zero() {
                break;
            }
            gpow = gpow.mul(g);
            if gpow.is_zero() {
                break;
            }
            acc = acc.add(&deriv.mul(&gpow));
            j += 1;
        }
        Ok(acc)
    }

    /// Identity substitution images at a given order.
    pub fn identity_images(order: u32) -> [Jet; 4] {
        [
            Jet::var(Var::X, order),
            Jet::var(Var::Y, order),
            Jet::var(Var::Z, order),
            Jet::var(Var::T, order),
        ]
    }

    /// Inverse of a unit series: u * invert_unit(u) = 1 through the order.
    pub fn invert_unit(&self) -> Result<Jet, JetError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(JetError::NotAUnit);
        }
        // u = c0 (1 - w) with mult(w) >= 1, so 1/u = (1 + w + w^2 + ...) / c0.
        let w = Jet::one(self.order).sub(&self.scale(&(Rat::one() / c0.clone())));
        let mut sum = Jet::one(self.order);
        let mut wp = w.clone();
        while !wp.is_zero() {
            sum = sum.add(&wp);
            wp = wp.mul(&w);
        }
        Ok(sum.scale(&(Rat::one() / c0)))
    }

    /// Decompose into weighted-homogeneous pieces of strictly increasing
    /// weighted degree. Pieces sum to the input.
    pub fn weighted_decompose(&self, w: &WeightVector) -> Vec<(u64, Jet)> {
        let mut by_degree: BTreeMap<u64, Jet> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree
                .entry(w.degree(m))
                .or_insert_with(|| Jet::zero(self.order))
                .add_term(*m, c.clone());
        }
        by_degree.into_iter().collect()
    }

    /// Lowest weighted-homogeneous piece and its weighted degree.
    pub fn lowest_weighted_piece(&self, w: &WeightVector) -> Option<(u64, Jet)> {
        self.weighted_decompose(w).into_iter().next()
    }

    /// Check graded homogeneity: either the common grade in Z_n, or a witness
    /// pair of monomials with different grades.
    pub fn graded_check(&self, g: &GradedWeights) -> Result<Result<u32, (Monomial, Monomial)>, JetError> {
        let mut it = self.terms.keys();
        let first = *it.next().ok_or(JetError::EmptyInput)?;
        let d = g.grade_mod(&first);
        for m in it {
            if g.grade_mod(m) != d {
                return Ok(Err((first, *m)));
            }
        }
        Ok(Ok(d))
    }

    /// Restrict to the monomials in the given variables, failing on any term
    /// that involves another variable.
    pub fn pure_in(&self, vars: &[Var]) -> Option<&Jet> {
        let ok = self.terms.keys().all(|m| {
            Var::ALL
                .iter()
                .all(|v| vars.contains(v) || m.exponent(*v) == 0)
        });
        ok.then_some(self)
    }

    /// Evaluate at a rational point (total substitution, no truncation
    /// semantics; meaningful for polynomial jets).
    pub fn eval(&self, p: &[Rat; 4]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..4 {
                for _ in 0..m.0[i] {
                    t *= p[i].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest total degree with a nonzero term.
    pub fn top_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit_coeff = abs.is_one();
            if m.degree() == 0 {
                write!(f, "{}", abs)?;
            } else if unit_coeff {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

/// Convenience constructor: monomial from exponents.
pub fn mono(x: u32, y: u32, z: u32, t: u32) -> Monomial {
    Monomial([x, y, z, t])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(order: u32) -> u32 {
        order
    }

    #[test]
    fn substitute_binomial() {
        // z^2 with z -> z + t gives z^2 + 2zt + t^2.
        let f = Jet::monomial(mono(0, 0, 2, 0), rat_int(1), n(6));
        let mut images = Jet::identity_images(6);
        images[Var::Z.index()] = Jet::var(Var::Z, 6).add(&Jet::var(Var::T, 6));
        let g = f.substitute(&images).unwrap();
        let expect = Jet::from_terms(
            [
                (mono(0, 0, 2, 0), rat_int(1)),
                (mono(0, 0, 1, 1), rat_int(2)),
                (mono(0, 0, 0, 2), rat_int(1)),
            ],
            6,
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn substitute_shear() {
        // x^2 + y^2 z with y -> y - z^2/2 at order 6:
        // x^2 + y^2 z - y z^3 + z^5/4.
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 2, 1, 0), rat_int(1)),
            ],
            6,
        );
        let mut images = Jet::identity_images(6);
        images[Var::Y.index()] =
            Jet::var(Var::Y, 6).add(&Jet::monomial(mono(0, 0, 2, 0), rat(-1, 2), 6));
        let g = f.substitute(&images).unwrap();
        let expect = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 2, 1, 0), rat_int(1)),
                (mono(0, 1, 3, 0), rat_int(-1)),
                (mono(0, 0, 5, 0), rat(1, 4)),
            ],
            6,
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn substitute_identity() {
        let f = Jet::from_terms(
            [
                (mono(1, 1, 0, 0), rat(3, 7)),
                (mono(0, 0, 3, 2), rat_int(-2)),
            ],
            8,
        );
        let g = f.substitute(&Jet::identity_images(8)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn substitute_rejects_nonzero_constant() {
        let f = Jet::var(Var::X, 4);
        let mut images = Jet::identity_images(4);
        images[0] = Jet::one(4);
        assert_eq!(
            f.substitute(&images),
            Err(JetError::GermViolation { var: Var::X })
        );
    }

    #[test]
    fn invert_geometric() {
        // 1/(1+z) = 1 - z + z^2 - z^3 at order 3.
        let u = Jet::one(3).add(&Jet::var(Var::Z, 3));
        let v = u.invert_unit().unwrap();
        let expect = Jet::from_terms(
            [
                (mono(0, 0, 0, 0), rat_int(1)),
                (mono(0, 0, 1, 0), rat_int(-1)),
                (mono(0, 0, 2, 0), rat_int(1)),
                (mono(0, 0, 3, 0), rat_int(-1)),
            ],
            3,
        );
        assert_eq!(v, expect);
    }

    #[test]
    fn invert_constant() {
        let u = Jet::constant(rat_int(2), 5);
        assert_eq!(u.invert_unit().unwrap(), Jet::constant(rat(1, 2), 5));
    }

    #[test]
    fn invert_round_trip_two_vars() {
        // (1 + z + t)^{-1} at order 2 is 1 - z - t + z^2 + 2zt + t^2,
        // and multiplying back gives 1 through order 2.
        let u = Jet::one(2)
            .add(&Jet::var(Var::Z, 2))
            .add(&Jet::var(Var::T, 2));
        let v = u.invert_unit().unwrap();
        let expect = Jet::from_terms(
            [
                (mono(0, 0, 0, 0), rat_int(1)),
                (mono(0, 0, 1, 0), rat_int(-1)),
                (mono(0, 0, 0, 1), rat_int(-1)),
                (mono(0, 0, 2, 0), rat_int(1)),
                (mono(0, 0, 1, 1), rat_int(2)),
                (mono(0, 0, 0, 2), rat_int(1)),
            ],
            2,
        );
        assert_eq!(v, expect);
        assert_eq!(u.mul(&v), Jet::one(2));
    }

    #[test]
    fn invert_rejects_non_unit() {
        assert_eq!(Jet::var(Var::Z, 3).invert_unit(), Err(JetError::NotAUnit));
    }

    #[test]
    fn weighted_decompose_pieces() {
        // x^2 + y^3 + y z^3 under w = (3,2,2,1): degrees 6 and 8.
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 3, 0, 0), rat_int(1)),
                (mono(0, 1, 3, 0), rat_int(1)),
            ],
            8,
        );
        let w = WeightVector::new([3, 2, 2, 1]);
        let pieces = f.weighted_decompose(&w);
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].0, 6);
        assert_eq!(
            pieces[0].1,
            Jet::from_terms(
                [
                    (mono(2, 0, 0, 0), rat_int(1)),
                    (mono(0, 3, 0, 0), rat_int(1))
                ],
                8
            )
        );
        assert_eq!(pieces[1].0, 8);
        assert_eq!(
            pieces[1].1,
            Jet::from_terms([(mono(0, 1, 3, 0), rat_int(1))], 8)
        );
    }

    #[test]
    fn weighted_decompose_zero() {
        let f = Jet::zero(4);
        assert!(f.weighted_decompose(&WeightVector::uniform()).is_empty());
    }

    #[test]
    fn weighted_decompose_cd_weights() {
        // x^2 + y^2 z + y t^3 + z^4 under (4,3,2,2): degrees 8 and 9.
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 2, 1, 0), rat_int(1)),
                (mono(0, 1, 0, 3), rat_int(1)),
                (mono(0, 0, 4, 0), rat_int(1)),
            ],
            8,
        );
        let w = WeightVector::new([4, 3, 2, 2]);
        let pieces = f.weighted_decompose(&w);
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].0, 8);
        assert_eq!(pieces[0].1.len(), 3);
        assert_eq!(pieces[1].0, 9);
        assert_eq!(
            pieces[1].1,
            Jet::from_terms([(mono(0, 1, 0, 3), rat_int(1))], 8)
        );
    }

    #[test]
    fn graded_check_homogeneous() {
        // x^2+y^2+z^4+t^6 under 1/2(1,1,1,0): grade 0.
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 2, 0, 0), rat_int(1)),
                (mono(0, 0, 4, 0), rat_int(1)),
                (mono(0, 0, 0, 6), rat_int(1)),
            ],
            8,
        );
        let g = GradedWeights::new(2, [1, 1, 1, 0]);
        assert_eq!(f.graded_check(&g).unwrap(), Ok(0));
    }

    #[test]
    fn graded_check_quarter() {
        // x^2+y^2+z^2+t^3 under 1/4(1,3,1,2): grade 2.
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 2, 0, 0), rat_int(1)),
                (mono(0, 0, 2, 0), rat_int(1)),
                (mono(0, 0, 0, 3), rat_int(1)),
            ],
            8,
        );
        let g = GradedWeights::new(4, [1, 3, 1, 2]);
        assert_eq!(f.graded_check(&g).unwrap(), Ok(2));
    }

    #[test]
    fn graded_check_witness() {
        // x^2 + z t^3 under 1/2(1,1,1,0): grades 0 vs 1.
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 0, 1, 3), rat_int(1)),
            ],
            8,
        );
        let g = GradedWeights::new(2, [1, 1, 1, 0]);
        let witness = f.graded_check(&g).unwrap().unwrap_err();
        let ms = [witness.0, witness.1];
        assert!(ms.contains(&mono(2, 0, 0, 0)) && ms.contains(&mono(0, 0, 1, 3)));
    }

    #[test]
    fn display_round_trip_shape() {
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 0, 1, 1), rat(-3, 2)),
            ],
            6,
        );
        assert_eq!(format!("{f}"), "-3/2*z*t+x^2");
    }

    #[test]
    fn ring_laws_sample() {
        let a = Jet::from_terms(
            [(mono(1, 0, 0, 0), rat_int(2)), (mono(0, 0, 2, 0), rat(1, 3))],
            5,
        );
        let b = Jet::from_terms(
            [(mono(0, 1, 0, 0), rat_int(-1)), (mono(0, 0, 0, 1), rat_int(5))],
            5,
        );
        let c = Jet::from_terms(
            [(mono(0, 0, 1, 0), rat(7, 2)), (mono(1, 1, 0, 0), rat_int(1))],
            5,
        );
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }
}
