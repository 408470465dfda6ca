//! Dense univariate polynomials over the rationals: exact arithmetic, Sturm
//! chains, and real-root isolation with parity data.

use crate::jet::{rat_int, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum PlaneError {
    #[error("input polynomial is zero")]
    EmptyInput,
    #[error("polynomial vanishes identically on the circle")]
    DegenerateCircle,
    #[error("sign-arc data did not stabilize through epsilon = 2^-{last_k}")]
    Unstable { last_k: u32 },
}

/// Sign of a nonzero rational value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(r: &Rat) -> Option<Sign> {
        if r.is_zero() {
            None
        } else if r.is_positive() {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// Univariate polynomial, coefficients in ascending degree order, no trailing
/// zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rat) -> UniPoly {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, e: usize) -> UniPoly {
        let mut coeffs = vec![Rat::zero(); e + 1];
        coeffs[e] = c;
        UniPoly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, e: usize) -> Rat {
        self.coeffs.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    /// Quotient and remainder of exact rational division.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() > dd && !rem.iter().all(|c| c.is_zero()) {
            let rd = rem.len() - 1;
            if rem[rd].is_zero() {
                rem.pop();
                continue;
            }
            let q = rem[rd].clone() / lead.clone();
            quot[rd - dd] = q.clone();
            for i in 0..=dd {
                let delta = q.clone() * divisor.coeffs[i].clone();
                rem[rd - dd + i] -= delta;
            }
            rem.pop();
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Rescale by the positive rational that clears denominators and divides
    /// out the integer content; signs everywhere are unchanged. Keeps the
    /// coefficient size of remainder chains under control.
    pub fn primitive(&self) -> UniPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::from(1);
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut content = BigInt::from(0);
        for c in &self.coeffs {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            content = content.gcd(&scaled);
        }
        if content.is_zero() {
            return self.clone();
        }
        self.scale(&Rat::new(denom_lcm, content))
    }

    /// Monic gcd via the Euclidean algorithm with primitive normalization.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive();
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&(Rat::one() / lead))
    }

    /// Radical: product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Squarefree decomposition (Yun): list of (factor, multiplicity) with
    /// squarefree pairwise-coprime factors of positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let deriv = self.derivative();
        let a0 = self.gcd(&deriv);
        let (mut b, _) = self.divrem(&a0);
        let (c, _) = deriv.divrem(&a0);
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), k));
            }
            let (b2, _) = b.divrem(&g);
            let (c2, _) = d.divrem(&g);
            b = b2;
            d = c2.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// Sturm chain of the polynomial (expected squarefree for root counting).
    /// Every member is normalized to primitive integer form, which preserves
    /// the sign sequences and keeps the coefficients small.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.primitive(), self.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().primitive());
        }
        chain
    }

    /// A bound B with every real root inside (-B, B).
    pub fn root_bound(&self) -> Rat {
        let lead = self.leading().expect("nonzero polynomial").clone();
        let mut max = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = (c.clone() / lead.clone()).abs();
            if q > max {
                max = q;
            }
        }
        max + rat_int(2)
    }

    /// Coefficients reversed: u^n p(1/u), whose nonzero roots are the
    /// reciprocals of the roots of p.
    pub fn reversed(&self) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        UniPoly::from_coeffs(coeffs)
    }

    /// Count real roots of a squarefree polynomial in the half-open interval
    /// (a, b], via sign variations of the Sturm chain.
    pub fn sturm_count(chain: &[UniPoly], a: &Rat, b: &Rat) -> usize {
        variations_at(chain, a) - variations_at(chain, b)
    }
}

fn variations_at(chain: &[UniPoly], x: &Rat) -> usize {
    let signs: Vec<Sign> = chain.iter().filter_map(|p| Sign::of(&p.eval(x))).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "u")?,
                1 => write!(f, "{}*u", a)?,
                _ if a.is_one() => write!(f, "u^{}", i)?,
                _ => write!(f, "{}*u^{}", a, i)?,
            }
        }
        Ok(())
    }
}

/// An isolating interval for one real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    /// Lower bound; for an exactly-known rational root, lo == hi.
    pub lo: Rat,
    pub hi: Rat,
    /// Whether the root has odd multiplicity in the original polynomial.
    pub odd: bool,
}

impl IsolatedRoot {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (self.lo.clone() + self.hi.clone()) / rat_int(2)
    }
}

enum RawRoot {
    /// Open interval (lo, hi), endpoints off the curve, signs differing.
    Interval(Rat, Rat),
    /// Exact rational root.
    Point(Rat),
}

/// Halve an isolating interval once, preserving its invariants; may discover
/// the root exactly.
fn refine_once(chain: &[UniPoly], q: &UniPoly, lo: &Rat, hi: &Rat) -> RawRoot {
    let mid = (lo.clone() + hi.clone()) / rat_int(2);
    if q.eval(&mid).is_zero() {
        return RawRoot::Point(mid);
    }
    if UniPoly::sturm_count(chain, lo, &mid) == 1 {
        RawRoot::Interval(lo.clone(), mid)
    } else {
        RawRoot::Interval(mid, hi.clone())
    }
}

/// Bisect the half-open segment (a, b] into isolating cells, tightening each
/// until the endpoints are off the curve with differing signs.
fn bisect_collect(chain: &[UniPoly], q: &UniPoly, a: Rat, b: Rat, raw: &mut Vec<RawRoot>) {
    let mut stack = vec![(a, b)];
    while let Some((a, b)) = stack.pop() {
        let count = UniPoly::sturm_count(chain, &a, &b);
        if count == 0 {
            continue;
        }
        if count == 1 {
            if q.eval(&b).is_zero() {
                raw.push(RawRoot::Point(b));
                continue;
            }
            // Tighten (a, b) until both endpoints are off the curve with
            // differing signs, or the root is hit exactly.
            let mut cur = RawRoot::Interval(a, b);
            loop {
                let RawRoot::Interval(lo, hi) = &cur else {
                    break;
                };
                if let (Some(ls), Some(hs)) = (Sign::of(&q.eval(lo)), Sign::of(&q.eval(hi))) {
                    if ls != hs {
                        break;
                    }
                }
                cur = refine_once(chain, q, lo, hi);
            }
            raw.push(cur);
            continue;
        }
        let mid = (a.clone() + b.clone()) / rat_int(2);
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
}

/// Isolate all real roots of `p`, returning sorted pairwise-disjoint
/// intervals, each containing exactly one real root, tagged with the parity
/// of its multiplicity in `p`. Open intervals never touch a neighbouring
/// exact root, so gap sample points are always available.
///
/// Roots in the unit interval are isolated directly; roots outside it are
/// reciprocals of the reversed polynomial's roots inside, which keeps every
/// evaluation point small whatever the root bound is.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<IsolatedRoot>, PlaneError> {
    if p.is_zero() {
        return Err(PlaneError::EmptyInput);
    }
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let q = p.squarefree_part().primitive();
    let chain = q.sturm_chain();
    let one = Rat::one();
    let mut raw: Vec<RawRoot> = Vec::new();
    if q.eval(&-one.clone()).is_zero() {
        raw.push(RawRoot::Point(-one.clone()));
    }
    bisect_collect(&chain, &q, -one.clone(), one.clone(), &mut raw);
    // Roots of |u| > 1 through the reversed polynomial.
    let qr = q.reversed().primitive();
    if qr.degree().unwrap_or(0) >= 1 {
        let chain_r = qr.sturm_chain();
        let mut outer: Vec<RawRoot> = Vec::new();
        bisect_collect(&chain_r, &qr, -one.clone(), Rat::zero(), &mut outer);
        bisect_collect(&chain_r, &qr, Rat::zero(), one.clone(), &mut outer);
        for r in outer {
            match r {
                RawRoot::Point(v) => {
                    // Unit roots were collected on the inner pass; zero is
                    // never a root of the reversed squarefree polynomial.
                    if v.clone().abs() != one {
                        raw.push(RawRoot::Point(Rat::one() / v));
                    }
                }
                RawRoot::Interval(mut lo, mut hi) => {
                    // Shrink until the interval avoids zero and the unit
                    // endpoints, then invert.
                    let mut dropped = false;
                    loop {
                        let bad = lo.is_zero()
                            || hi.is_zero()
                            || (lo.is_negative() != hi.is_negative())
                            || lo.clone().abs() == one
                            || hi.clone().abs() == one;
                        if !bad {
                            break;
                        }
                        match refine_once(&chain_r, &qr, &lo, &hi) {
                            RawRoot::Point(v) => {
                                if v.clone().abs() != one && !v.is_zero() {
                                    raw.push(RawRoot::Point(Rat::one() / v));
                                }
                                dropped = true;
                                break;
                            }
                            RawRoot::Interval(l, h) => {
                                lo = l;
                                hi = h;
                            }
                        }
                    }
                    if dropped {
                        continue;
                    }
                    let (a, b) = (Rat::one() / hi, Rat::one() / lo);
                    raw.push(RawRoot::Interval(a, b));
                }
            }
        }
    }
    // Sort by root position; interval midpoints order correctly because the
    // intervals are pairwise disjoint open sets away from exact roots.
    raw.sort_by(|x, y| {
        let key = |r: &RawRoot| match r {
            RawRoot::Interval(lo, hi) => (lo.clone() + hi.clone()) / rat_int(2),
            RawRoot::Point(r) => r.clone(),
        };
        key(x).cmp(&key(y))
    });
    // Separate intervals from adjacent exact roots sharing an endpoint.
    let mut separated = true;
    loop {
        for i in 0..raw.len().saturating_sub(1) {
            let touching = match (&raw[i], &raw[i + 1]) {
                (RawRoot::Interval(_, hi), RawRoot::Point(r)) => hi == r,
                (RawRoot::Point(r), RawRoot::Interval(lo, _)) => lo == r,
                _ => false,
            };
            if touching {
                separated = false;
                let (idx, (lo, hi)) = match (&raw[i], &raw[i + 1]) {
                    (RawRoot::Interval(lo, hi), _) => (i, (lo.clone(), hi.clone())),
                    (_, RawRoot::Interval(lo, hi)) => (i + 1, (lo.clone(), hi.clone())),
                    _ => unreachable!(),
                };
                raw[idx] = refine_once(&chain, &q, &lo, &hi);
            }
        }
        if separated {
            break;
        }
        separated = true;
    }
    let mut roots: Vec<IsolatedRoot> = Vec::new();
    for r in raw {
        match r {
            RawRoot::Interval(lo, hi) => {
                let odd = Sign::of(&p.eval(&lo)) != Sign::of(&p.eval(&hi));
                roots.push(IsolatedRoot { lo, hi, odd });
            }
            RawRoot::Point(r) => {
                // Exact rational root: read the multiplicity off by division.
                let mut mult = 0u32;
                let lin = UniPoly::from_coeffs(vec![-r.clone(), Rat::one()]);
                let mut rem = p.clone();
                loop {
                    let (quot, rest) = rem.divrem(&lin);
                    if rest.is_zero() {
                        mult += 1;
                        rem = quot;
                    } else {
                        break;
                    }
                }
                roots.push(IsolatedRoot {
                    lo: r.clone(),
                    hi: r,
                    odd: mult % 2 == 1,
                });
            }
        }
    }
    roots.sort_by_key(|a| a.lo.clone() + a.hi.clone());
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::rat;

    fn poly(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn cubic_roots() {
        // u^3 - u: roots -1, 0, 1, all odd.
        let p = poly(&[0, -1, 0, 1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.odd));
        for (r, expect) in roots.iter().zip([-1i64, 0, 1]) {
            let e = rat_int(expect);
            assert!(r.lo <= e && e <= r.hi);
        }
    }

    #[test]
    fn no_real_roots() {
        let p = poly(&[1, 0, 1]); // u^2 + 1
        assert!(isolate_real_roots(&p).unwrap().is_empty());
    }

    #[test]
    fn sqrt_two() {
        // u^2 - 2: two disjoint odd intervals with a sign change on each.
        let p = poly(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.odd));
        assert!(roots[0].hi <= roots[1].lo);
        for r in &roots {
            assert!(!r.is_point());
            assert_ne!(Sign::of(&p.eval(&r.lo)), Sign::of(&p.eval(&r.hi)));
        }
        // Both contain a square root of two: lo^2 and hi^2 straddle 2.
        for r in &roots {
            let lo2 = r.lo.clone() * r.lo.clone();
            let hi2 = r.hi.clone() * r.hi.clone();
            assert!((lo2 - rat_int(2)).is_positive() != (hi2 - rat_int(2)).is_positive());
        }
    }

    #[test]
    fn double_root_parity() {
        // (u-1)^2 (u+2): even root at 1, odd root at -2.
        let p = poly(&[2, -3, 0, 1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].odd, "root -2 should be odd");
        assert!(!roots[1].odd, "root 1 should be even");
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            isolate_real_roots(&UniPoly::zero()),
            Err(PlaneError::EmptyInput)
        );
    }

    #[test]
    fn interval_count_matches_sturm_variation() {
        // Property from the module contract, spot-checked on a family.
        for seed in 0..20i64 {
            let p = poly(&[seed % 5 - 2, 3, seed % 3 - 1, 0, 1]);
            if p.is_zero() {
                continue;
            }
            let q = p.squarefree_part();
            let chain = q.sturm_chain();
            let b = q.root_bound();
            let count = UniPoly::sturm_count(&chain, &(-b.clone()), &b);
            let roots = isolate_real_roots(&p).unwrap();
            assert_eq!(roots.len(), count, "seed {seed}");
        }
    }

    #[test]
    fn yun_decomposition() {
        // (u-1)^2 (u+1)^3 u
        let f = poly(&[0, 1])
            .mul(&poly(&[-1, 1]).mul(&poly(&[-1, 1])))
            .mul(&poly(&[1, 1]).mul(&poly(&[1, 1])).mul(&poly(&[1, 1])));
        let dec = f.squarefree_decomposition();
        let mult_deg: Vec<(u32, usize)> = dec
            .iter()
            .map(|(g, k)| (*k, g.degree().unwrap()))
            .collect();
        assert_eq!(mult_deg, vec![(1, 1), (2, 1), (3, 1)]);
        assert!(rat(1, 1) == rat_int(1));
    }
}
