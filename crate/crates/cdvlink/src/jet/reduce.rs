//! Coordinate-change bookkeeping and the weighted Jacobian-ideal reduction.
//!
//! Every normalization step is recorded as a [`Transform`]; replaying a log on
//! the original series must reproduce the reduced series exactly, which the
//! classifier test-suite checks for every classified input.

use super::{Jet, JetError, Monomial, Rat, Var, WeightVector};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// One equivalence step applied to a series.
#[derive(Debug, Clone)]
pub enum Transform {
    /// Multiply the series by a nonzero rational.
    Scale(Rat),
    /// Substitute every variable by the recorded image.
    Substitute([Jet; 4]),
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Scale(c) => write!(f, "scale {}", c),
            Transform::Substitute(images) => {
                write!(f, "substitute")?;
                for v in Var::ALL {
                    let img = &images[v.index()];
                    let id = Jet::var(v, img.order());
                    if *img != id {
                        write!(f, " {} -> {};", v.name(), img)?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Ordered list of equivalence steps.
#[derive(Debug, Clone, Default)]
pub struct TransformLog {
    steps: Vec<Transform>,
}

impl TransformLog {
    pub fn new() -> TransformLog {
        TransformLog { steps: Vec::new() }
    }

    pub fn push(&mut self, t: Transform) {
        self.steps.push(t);
    }

    pub fn push_scale(&mut self, c: Rat) {
        if !c.is_one() {
            self.steps.push(Transform::Scale(c));
        }
    }

    /// Record x_v -> x_v + g.
    pub fn push_shift(&mut self, v: Var, g: &Jet) {
        if g.is_zero() {
            return;
        }
        let mut images = Jet::identity_images(g.order());
        images[v.index()] = images[v.index()].add(g);
        self.steps.push(Transform::Substitute(images));
    }

    /// Record the linear change x_i -> sum_j m[i][j] x_j at the given order.
    pub fn push_linear(&mut self, m: &[[Rat; 4]; 4], order: u32) {
        let mut images = [
            Jet::zero(order),
            Jet::zero(order),
            Jet::zero(order),
            Jet::zero(order),
        ];
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                images[i] = images[i].add(&Jet::var(Var::from_index(j), order).scale(c));
            }
        }
        self.steps.push(Transform::Substitute(images));
    }

    pub fn extend(&mut self, other: TransformLog) {
        self.steps.extend(other.steps);
    }

    pub fn steps(&self) -> &[Transform] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Apply every step in order to `f`.
    pub fn replay(&self, f: &Jet) -> Result<Jet, JetError> {
        let mut g = f.clone();
        for step in &self.steps {
            g = match step {
                Transform::Scale(c) => g.scale(c),
                Transform::Substitute(images) => {
                    // Images were recorded at the order of the step; replaying
                    // at the current order keeps every retained degree exact.
                    let order = g.order();
                    let lifted: [Jet; 4] = [
                        images[0].with_order(order),
                        images[1].with_order(order),
                        images[2].with_order(order),
                        images[3].with_order(order),
                    ];
                    // A shift touching one variable replays through the
                    // cheaper Taylor route.
                    let non_identity: Vec<usize> = (0..4)
                        .filter(|&i| lifted[i] != Jet::var(Var::from_index(i), order))
                        .collect();
                    if non_identity.len() == 1 {
                        let i = non_identity[0];
                        let v = Var::from_index(i);
                        let delta = lifted[i].sub(&Jet::var(v, order));
                        if delta.multiplicity().is_some_and(|m| m >= 1) {
                            g.shift_var(v, &delta)?
                        } else {
                            g.substitute(&lifted)?
                        }
                    } else {
                        g.substitute(&lifted)?
                    }
                }
            };
        }
        Ok(g)
    }

    /// Short stable fingerprint of the rendered log, for reports.
    pub fn digest(&self) -> String {
        let mut hash: u64 = 0xcbf29ce484222325;
        for step in &self.steps {
            for b in step.to_string().bytes() {
                hash ^= b as u64;
                hash = hash.wrapping_mul(0x100000001b3);
            }
        }
        format!("{}:{:016x}", self.steps.len(), hash)
    }
}

/// Result of a weighted Jacobian-ideal reduction.
#[derive(Debug, Clone)]
pub struct JacobianReduction {
    pub reduced: Jet,
    pub log: TransformLog,
    /// Weighted degree of the leading piece the reduction was driven by.
    pub leading_degree: u64,
}

/// All monomials of the given weighted degree with total degree at most
/// `max_total`, in increasing graded-lex order.
fn monomials_with_weighted_degree(w: &WeightVector, target: u64, max_total: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = [0u32; 4];
    fn rec(
        w: &WeightVector,
        target: u64,
        max_total: u32,
        i: usize,
        exps: &mut [u32; 4],
        used: u32,
        out: &mut Vec<Monomial>,
    ) {
        if i == 4 {
            if target == 0 {
                out.push(Monomial(*exps));
            }
            return;
        }
        let wi = w.0[i] as u64;
        let max_e = (target / wi).min((max_total - used) as u64) as u32;
        for e in 0..=max_e {
            exps[i] = e;
            rec(w, target - e as u64 * wi, max_total, i + 1, exps, used + e, out);
        }
        exps[i] = 0;
    }
    rec(w, target, max_total, 0, &mut exps, 0, &mut out);
    out.sort();
    out
}

type Vector = BTreeMap<Monomial, Rat>;

fn vector_of(f: &Jet) -> Vector {
    f.terms().map(|(m, c)| (*m, c.clone())).collect()
}

fn leading(v: &Vector) -> Option<Monomial> {
    v.keys().next_back().copied()
}

fn axpy(dst: &mut Vector, c: &Rat, src: &Vector) {
    if c.is_zero() {
        return;
    }
    for (m, s) in src {
        let entry = dst.entry(*m).or_insert_with(Rat::zero);
        *entry += c.clone() * s.clone();
        if entry.is_zero() {
            dst.remove(m);
        }
    }
}

/// Exact linear elimination over the rationals. Columns are reduced in input
/// order; within a column, the pivot is its largest monomial, so the pivot
/// choice is fixed by the graded-lex order.
struct Eliminator {
    /// (pivot monomial, reduced column, combination over generator indices)
    basis: Vec<(Monomial, Vector, BTreeMap<usize, Rat>)>,
}

impl Eliminator {
    fn new() -> Eliminator {
        Eliminator { basis: Vec::new() }
    }

    fn reduce(&self, v: &mut Vector, comb: &mut BTreeMap<usize, Rat>) {
        for (pivot, col, col_comb) in &self.basis {
            if let Some(c) = v.get(pivot).cloned() {
                let factor = -c;
                axpy(v, &factor, col);
                for (idx, cc) in col_comb {
                    let entry = comb.entry(*idx).or_insert_with(Rat::zero);
                    *entry += factor.clone() * cc.clone();
                    if entry.is_zero() {
                        comb.remove(idx);
                    }
                }
            }
        }
    }

    fn insert(&mut self, generator_index: usize, column: Vector) {
        let mut v = column;
        let mut comb = BTreeMap::new();
        comb.insert(generator_index, Rat::one());
        self.reduce(&mut v, &mut comb);
        if let Some(pivot) = leading(&v) {
            let inv = v.get(&pivot).unwrap().clone();
            let scale = Rat::one() / inv;
            for c in v.values_mut() {
                *c *= scale.clone();
            }
            for c in comb.values_mut() {
                *c *= scale.clone();
            }
            self.basis.push((pivot, v, comb));
        }
    }
}

/// Kill every removable element of weighted degree above the leading piece.
///
/// Working degree by degree, solves for series g_i with w(g_i) = w(x_i) + e
/// such that subtracting sum g_i dF_d/dx_i cancels as much of the degree
/// (d + e) part of F as the ideal allows, applies x_i -> x_i - g_i, and
/// records the substitution. Stops at the truncation order, so the formally
/// infinite reduction is cut off there; the log holds exactly what was done.
pub fn jacobian_reduce(f: &Jet, w: &WeightVector) -> JacobianReduction {
    let order = f.order();
    let mut log = TransformLog::new();
    let Some((d, lead)) = f.lowest_weighted_piece(w) else {
        return JacobianReduction {
            reduced: f.clone(),
            log,
            leading_degree: 0,
        };
    };
    let partials: Vec<(Var, Jet)> = Var::ALL
        .iter()
        .map(|&v| (v, lead.derivative(v)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    // Every leading form used by the classifier (diagonal quadrics, x^2+y^2z,
    // x^2+y^3, x^2+y^3+-z^2t^2) has monomial partial derivatives, where the
    // removable span is spanned by divisible monomials and no elimination is
    // needed.
    if partials
        .iter()
        .all(|(_, p)| p.len() == 1)
    {
        return jacobian_reduce_monomial(f, w, d, &partials);
    }
    let mut current = f.clone();
    let max_weighted = w.0.iter().map(|&wi| wi as u64).max().unwrap() * order as u64;
    let mut e: u64 = 1;
    while d + e <= max_weighted {
        let piece: Vector = current
            .terms()
            .filter(|(m, _)| w.degree(m) == d + e)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        if piece.is_empty() {
            e += 1;
            continue;
        }
        // Generators: one column per (partial, admissible multiplier monomial).
        let mut generators: Vec<(Var, Monomial)> = Vec::new();
        let mut elim = Eliminator::new();
        for (v, p) in &partials {
            let gw = w.weight(*v) as u64 + e;
            for gm in monomials_with_weighted_degree(w, gw, order) {
                let col_jet = p.mul(&Jet::monomial(gm, Rat::one(), order));
                let col = vector_of(&col_jet);
                if col.is_empty() {
                    continue;
                }
                generators.push((*v, gm));
                elim.insert(generators.len() - 1, col);
            }
        }
        if generators.is_empty() {
            e += 1;
            continue;
        }
        let mut residual = piece.clone();
        let mut comb: BTreeMap<usize, Rat> = BTreeMap::new();
        elim.reduce(&mut residual, &mut comb);
        // piece = residual - sum comb_j * col_j, so subtracting the span part
        // means substituting x_v -> x_v + comb_j * gm per generator.
        if comb.is_empty() {
            e += 1;
            continue;
        }
        let mut shifts: BTreeMap<Var, Jet> = BTreeMap::new();
        for (idx, c) in &comb {
            let (v, gm) = &generators[*idx];
            let entry = shifts.entry(*v).or_insert_with(|| Jet::zero(order));
            *entry = entry.add(&Jet::monomial(*gm, c.clone(), order));
        }
        // Sequential single-variable shifts: each alone removes its share of
        // the degree-(d+e) slice modulo higher degrees, and the log replays
        // the same sequence.
        for (v, g) in &shifts {
            current = current.shift_var(*v, g).expect("shift preserves the germ");
            log.push_shift(*v, g);
        }
        e += 1;
    }
    JacobianReduction {
        reduced: current,
        log,
        leading_degree: d,
    }
}

/// Degree-by-degree removal when every partial of the leading form is a
/// single monomial: a term is removable exactly when some partial's monomial
/// divides it.
fn jacobian_reduce_monomial(
    f: &Jet,
    w: &WeightVector,
    d: u64,
    partials: &[(Var, Jet)],
) -> JacobianReduction {
    let order = f.order();
    let mut log = TransformLog::new();
    let mut current = f.clone();
    let pivots: Vec<(Var, Monomial, Rat)> = partials
        .iter()
        .map(|(v, p)| {
            let (m, c) = p.terms().next().unwrap();
            (*v, *m, c.clone())
        })
        .collect();
    let max_weighted = w.0.iter().map(|&wi| wi as u64).max().unwrap() * order as u64;
    let mut e: u64 = 1;
    while d + e <= max_weighted {
        let mut shifts: BTreeMap<Var, Jet> = BTreeMap::new();
        for (m, c) in current.terms() {
            if w.degree(m) != d + e {
                continue;
            }
            if let Some((v, pm, pc)) = pivots.iter().find(|(_, pm, _)| m.divisible_by(pm)) {
                let g = Jet::monomial(m.div(pm), -c.clone() / pc.clone(), order);
                let entry = shifts.entry(*v).or_insert_with(|| Jet::zero(order));
                *entry = entry.add(&g);
            }
        }
        for (v, g) in &shifts {
            current = current.shift_var(*v, g).expect("shift preserves the germ");
            log.push_shift(*v, g);
        }
        e += 1;
    }
    JacobianReduction {
        reduced: current,
        log,
        leading_degree: d,
    }
}

/// Normalize the pure-`v` tail of a series to a single power.
///
/// Expects the terms involving `v` to be exactly c*v^m*(1 + higher pure-`v`
/// terms); repeated shears v -> v*(1 + a*v^k) remove the higher terms one
/// degree at a time, leaving c*v^m.
pub fn absorb_unit_power(f: &Jet, v: Var, log: &mut TransformLog) -> Jet {
    let order = f.order();
    let mut current = f.clone();
    let pure: Vec<(u32, Rat)> = current
        .terms()
        .filter(|(m, _)| m.degree() == m.exponent(v))
        .filter(|(m, _)| m.exponent(v) > 0)
        .map(|(m, c)| (m.exponent(v), c.clone()))
        .collect();
    let Some(&(m_low, ref c_low)) = pure.first() else {
        return current;
    };
    let c_low = c_low.clone();
    let mut k = 1;
    while m_low + k <= order {
        let mut target = Monomial::one();
        target.0[v.index()] = m_low + k;
        let coeff = current.coeff(&target);
        if !coeff.is_zero() {
            // (v + a v^{k+1})^m has v^{m+k} coefficient m*a on top of v^m.
            let a = -coeff / (c_low.clone() * super::rat_int(m_low as i64));
            let mut shear = Monomial::one();
            shear.0[v.index()] = k + 1;
            let g = Jet::monomial(shear, a, order);
            current = current.shift_var(v, &g).expect("shear preserves germ");
            log.push_shift(v, &g);
        }
        k += 1;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{mono, rat, rat_int};

    #[test]
    fn reduce_cd_shear() {
        // x^2 + y^2 z + y z^3 with the cD weights (3,2,2,6) reduces to
        // x^2 + y^2 z + z^5/4 via y -> y - z^2/2; the log must replay.
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 2, 1, 0), rat_int(1)),
                (mono(0, 1, 3, 0), rat_int(1)),
            ],
            12,
        );
        let w = WeightVector::new([3, 2, 2, 6]);
        let red = jacobian_reduce(&f, &w);
        let expect = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 2, 1, 0), rat_int(1)),
                (mono(0, 0, 5, 0), rat(-1, 4)),
            ],
            12,
        );
        assert_eq!(red.reduced, expect);
        assert_eq!(red.log.replay(&f).unwrap(), red.reduced);
        // Verify the removal is the stated shear.
        let mut images = Jet::identity_images(12);
        images[Var::Y.index()] =
            Jet::var(Var::Y, 12).add(&Jet::monomial(mono(0, 0, 2, 0), rat(-1, 2), 12));
        assert_eq!(f.substitute(&images).unwrap(), expect);
    }

    #[test]
    fn reduce_fixed_point() {
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 3, 0, 0), rat_int(1)),
            ],
            12,
        );
        let w = WeightVector::new([3, 2, 2, 6]);
        let red = jacobian_reduce(&f, &w);
        assert_eq!(red.reduced, f);
        assert!(red.log.is_empty());
    }

    #[test]
    fn reduce_kills_high_square_terms() {
        // x^2 + y^3 + y^2 z^4 with w=(3,2,1,1): y -> y - z^4/3 removes the
        // y^2-term above the leading degree; no y^2 monomial of weighted
        // degree > 6 survives.
        let f = Jet::from_terms(
            [
                (mono(2, 0, 0, 0), rat_int(1)),
                (mono(0, 3, 0, 0), rat_int(1)),
                (mono(0, 2, 4, 0), rat_int(1)),
            ],
            14,
        );
        let w = WeightVector::new([3, 2, 1, 1]);
        let red = jacobian_reduce(&f, &w);
        for (m, _) in red.reduced.terms() {
            let wd = w.degree(m);
            assert!(
                !(m.exponent(Var::Y) >= 2 && wd > 6),
                "surviving y^2 monomial {m} of weighted degree {wd}"
            );
        }
        assert_eq!(red.log.replay(&f).unwrap(), red.reduced);
    }

    #[test]
    fn absorb_tail_into_power() {
        // z^3 + z^4 becomes z^3 after shearing z.
        let f = Jet::from_terms(
            [
                (mono(0, 0, 3, 0), rat_int(1)),
                (mono(0, 0, 4, 0), rat_int(1)),
            ],
            9,
        );
        let mut log = TransformLog::new();
        let g = absorb_unit_power(&f, Var::Z, &mut log);
        assert_eq!(g, Jet::from_terms([(mono(0, 0, 3, 0), rat_int(1))], 9));
        assert_eq!(log.replay(&f).unwrap(), g);
    }

    #[test]
    fn log_digest_stable() {
        let mut log = TransformLog::new();
        log.push_scale(rat(1, 2));
        let d1 = log.digest();
        assert_eq!(d1, log.digest());
        log.push_shift(Var::X, &Jet::monomial(mono(0, 1, 0, 0), rat_int(2), 4));
        assert_ne!(d1, log.digest());
    }
}
