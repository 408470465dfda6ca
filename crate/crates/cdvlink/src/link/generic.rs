//! Exact generic-case link formulas, with conservative hypothesis gates.

use super::surface::{Surface, SurfaceDescriptor};
use super::LinkError;
use crate::classify::cubic::TriPoly;
use crate::jet::{Rat, Var};
use crate::oracle::projective_curve_components;
use crate::plane::{BinaryFormReport, Sign, UniPoly};
use num_traits::{One, Signed, Zero};

/// Polynomial in y with coefficients in Q[z]; ascending y-degree.
type YPoly = Vec<UniPoly>;

fn patch_t1(p: &TriPoly) -> YPoly {
    let jet = p.to_jet(u32::MAX - 1);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (m, c) in jet.terms() {
        let (a, b) = (m.exponent(Var::Y) as usize, m.exponent(Var::Z) as usize);
        if rows.len() <= a {
            rows.resize(a + 1, Vec::new());
        }
        if rows[a].len() <= b {
            rows[a].resize(b + 1, Rat::zero());
        }
        rows[a][b] += c.clone();
    }
    let mut out: YPoly = rows.into_iter().map(UniPoly::from_coeffs).collect();
    while out.last().is_some_and(|r| r.is_zero()) {
        out.pop();
    }
    out
}

/// Binary form in (y, z) from the t = 0 restriction.
fn line_t0(p: &TriPoly) -> YPoly {
    let jet = p.to_jet(u32::MAX - 1);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (m, c) in jet.terms() {
        if m.exponent(Var::T) != 0 {
            continue;
        }
        let (a, b) = (m.exponent(Var::Y) as usize, m.exponent(Var::Z) as usize);
        if rows.len() <= a {
            rows.resize(a + 1, Vec::new());
        }
        if rows[a].len() <= b {
            rows[a].resize(b + 1, Rat::zero());
        }
        rows[a][b] += c.clone();
    }
    let mut out: YPoly = rows.into_iter().map(UniPoly::from_coeffs).collect();
    while out.last().is_some_and(|r| r.is_zero()) {
        out.pop();
    }
    out
}

/// Resultant of two polynomials in y over Q[z], by the Sylvester determinant.
fn resultant_y(a: &YPoly, b: &YPoly) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return UniPoly::zero();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if da == 0 {
        return power(&a[0], db);
    }
    if db == 0 {
        return power(&b[0], da);
    }
    let n = da + db;
    let mut m: Vec<Vec<UniPoly>> = vec![vec![UniPoly::zero(); n]; n];
    for row in 0..db {
        for (k, coeff) in a.iter().enumerate() {
            m[row][row + da - k] = coeff.clone();
        }
    }
    for row in 0..da {
        for (k, coeff) in b.iter().enumerate() {
            m[db + row][row + db - k] = coeff.clone();
        }
    }
    determinant(&m)
}

fn power(p: &UniPoly, e: usize) -> UniPoly {
    let mut out = UniPoly::constant(Rat::one());
    for _ in 0..e {
        out = out.mul(p);
    }
    out
}

fn determinant(m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = m[0][col].mul(&determinant(&minor));
        if col % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

fn ypoly_gcd(a: &YPoly, b: &YPoly) -> usize {
    // Total-degree of the gcd of two binary forms given as y-rows; used only
    // for the line-at-infinity check, where a nonconstant gcd means a common
    // projective zero.
    let ba = crate::plane::BivarPoly::from_terms(a.iter().enumerate().flat_map(|(i, row)| {
        row.coeffs()
            .iter()
            .enumerate()
            .map(move |(j, c)| ((i as u32, j as u32), c.clone()))
            .collect::<Vec<_>>()
    }));
    let bb = crate::plane::BivarPoly::from_terms(b.iter().enumerate().flat_map(|(i, row)| {
        row.coeffs()
            .iter()
            .enumerate()
            .map(move |(j, c)| ((i as u32, j as u32), c.clone()))
            .collect::<Vec<_>>()
    }));
    ba.gcd(&bb).total_degree().unwrap_or(0) as usize
}

/// Conservative exact smoothness test for a plane cubic: certifies the
/// absence of complex singular points through resultant chains; anything
/// degenerate is reported as not smooth, never the other way around.
pub fn cubic_is_smooth(f3: &TriPoly) -> bool {
    let partials: Vec<TriPoly> = [Var::Y, Var::Z, Var::T]
        .into_iter()
        .map(|v| f3.derivative(v))
        .collect();
    if partials.iter().any(|p| p.is_zero()) {
        return false;
    }
    // Affine patch t = 1: a common zero of the three gradient quadrics forces
    // a common root of the two y-resultants.
    let p: Vec<YPoly> = partials.iter().map(patch_t1).collect();
    if p.iter().any(|q| q.is_empty()) {
        return false;
    }
    // Use the partial with the highest y-degree as the anchor.
    let anchor = (0..3).max_by_key(|&i| p[i].len()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != anchor).collect();
    if p[anchor].len() == 1 {
        // No y-dependence anywhere: cannot certify.
        return false;
    }
    let r1 = resultant_y(&p[anchor], &p[others[0]]);
    let r2 = resultant_y(&p[anchor], &p[others[1]]);
    if r1.is_zero() || r2.is_zero() {
        return false;
    }
    if r1.gcd(&r2).degree().unwrap_or(0) > 0 {
        return false;
    }
    // Line at infinity t = 0: the nonzero restrictions must share no factor.
    let lines: Vec<YPoly> = partials.iter().map(line_t0).collect();
    let nonzero: Vec<&YPoly> = lines.iter().filter(|l| !l.is_empty()).collect();
    if nonzero.is_empty() {
        return false;
    }
    if nonzero.len() == 1 {
        // A single binary form always vanishes somewhere over C.
        return false;
    }
    let mut have_coprime_pair = false;
    'outer: for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            if ypoly_gcd(nonzero[i], nonzero[j]) == 0 {
                have_coprime_pair = true;
                break 'outer;
            }
        }
    }
    if !have_coprime_pair {
        // All pairs share factors: a common zero at infinity is possible and
        // cannot be ruled out here.
        return false;
    }
    true
}

/// Generic cD4 link: for a smooth cubic cone, one real component gives the
/// sphere and two give sphere plus torus; the component count is delegated to
/// the sampling oracle.
pub fn link_cd4_generic(
    f3: &TriPoly,
    resolution: u32,
) -> Result<SurfaceDescriptor, LinkError> {
    if !cubic_is_smooth(f3) {
        return Err(LinkError::NotGeneric(
            "cubic has (or may have) a real singular point".into(),
        ));
    }
    match projective_curve_components(f3, resolution) {
        Ok(1) => Ok(SurfaceDescriptor::single(Surface::sphere())),
        Ok(2) => Ok(SurfaceDescriptor::from_components([
            Surface::sphere(),
            Surface::torus(),
        ])),
        Ok(n) => Err(LinkError::InternalContractViolation(format!(
            "smooth cubic sampled with {n} components"
        ))),
        Err(e) => Err(LinkError::NotGeneric(format!("component sampling: {e}"))),
    }
}

/// Generic cD>4 link from the real-factor statistics of h_s.
pub fn link_cdgt4_generic(report: &BinaryFormReport) -> Result<SurfaceDescriptor, LinkError> {
    if report.divisible_by_z {
        return Err(LinkError::NotGeneric("z divides h_s".into()));
    }
    if !report.squarefree {
        return Err(LinkError::NotGeneric(
            "h_s has a multiple real linear factor".into(),
        ));
    }
    let rho = report.rho;
    if rho % 2 == 1 {
        let r = (rho / 2) as u32;
        let mut d = SurfaceDescriptor::single(Surface::genus(r));
        d.extend(&SurfaceDescriptor::spheres(r as usize));
        Ok(d)
    } else {
        if rho == 0 {
            return Err(LinkError::NotGeneric(
                "definite h_s is outside the generic formula".into(),
            ));
        }
        let r = (rho / 2) as u32;
        match report.sign_at_0_1 {
            Some(Sign::Minus) => {
                let mut d = SurfaceDescriptor::single(Surface::genus(r));
                d.extend(&SurfaceDescriptor::spheres(r as usize - 1));
                Ok(d)
            }
            Some(Sign::Plus) => {
                let mut d = SurfaceDescriptor::single(Surface::genus(r - 1));
                d.extend(&SurfaceDescriptor::spheres(r as usize));
                Ok(d)
            }
            None => unreachable!("z does not divide h_s"),
        }
    }
}

/// Generic cE6/cE8 link: the cone projects homeomorphically to 3-space.
pub fn link_ce_generic() -> SurfaceDescriptor {
    SurfaceDescriptor::single(Surface::sphere())
}

/// Detect the yzt triangle case and derive the six smoothing joins from the
/// quartic part of the residual.
///
/// Returns None when the cubic is not supported on yzt alone; otherwise the
/// join flags in [`super::cd4_yzt::VERTEX_ORDER`] order, or a reason when the
/// quartic vanishes at one of the crossings.
pub fn yzt_joins(
    f3: &TriPoly,
    residual: &TriPoly,
) -> Option<Result<[bool; 6], String>> {
    let jet = f3.to_jet(8);
    let mono_yzt = crate::jet::mono(0, 1, 1, 1);
    let c = jet.coeff(&mono_yzt);
    if c.is_zero() || jet.len() != 1 {
        return None;
    }
    // Quartic part of the residual, evaluated at the six crossings.
    let r4 = {
        let j = residual.to_jet(8).homogeneous_part(4);
        TriPoly::from_jet(&j).unwrap()
    };
    let eval = |y: i64, z: i64, t: i64| -> Rat {
        r4.to_jet(8).eval(&[
            Rat::zero(),
            crate::jet::rat_int(y),
            crate::jet::rat_int(z),
            crate::jet::rat_int(t),
        ])
    };
    let mut deltas = [
        eval(1, 0, 0),
        eval(-1, 0, 0),
        eval(0, 1, 0),
        eval(0, -1, 0),
        eval(0, 0, 1),
        eval(0, 0, -1),
    ];
    if c.is_negative() {
        // Normalize to a positive yzt coefficient by y -> -y, which swaps the
        // quartic values at the two y-axis crossings.
        deltas.swap(0, 1);
    }
    if deltas.iter().any(|d| d.is_zero()) {
        return Some(Err(
            "a smoothing sign is not determined by the quartic part".into(),
        ));
    }
    let mut joins = [false; 6];
    for (k, d) in deltas.iter().enumerate() {
        joins[k] = d.is_negative();
    }
    Some(Ok(joins))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::cubic::linear_tri;
    use crate::jet::rat_int;

    fn lin(a: i64, b: i64, c: i64) -> TriPoly {
        linear_tri(&[rat_int(a), rat_int(b), rat_int(c)])
    }

    #[test]
    fn smoothness_gate() {
        let y = lin(1, 0, 0);
        let z = lin(0, 1, 0);
        let t = lin(0, 0, 1);
        let fermat = y
            .mul(&y)
            .mul(&y)
            .add(&z.mul(&z).mul(&z))
            .add(&t.mul(&t).mul(&t));
        assert!(cubic_is_smooth(&fermat));
        let oval_cubic = y
            .mul(&y)
            .mul(&t)
            .sub(&z.mul(&z.sub(&t)).mul(&z.add(&t)));
        assert!(cubic_is_smooth(&oval_cubic));
        let triangle = y.mul(&z).mul(&t);
        assert!(!cubic_is_smooth(&triangle));
        let cusp = y.mul(&y).mul(&t).sub(&z.mul(&z).mul(&z));
        assert!(!cubic_is_smooth(&cusp));
    }

    #[test]
    fn generic_cd4_fermat_sphere() {
        let y = lin(1, 0, 0);
        let z = lin(0, 1, 0);
        let t = lin(0, 0, 1);
        let fermat = y
            .mul(&y)
            .mul(&y)
            .add(&z.mul(&z).mul(&z))
            .add(&t.mul(&t).mul(&t));
        let d = link_cd4_generic(&fermat, 48).unwrap();
        assert_eq!(d, SurfaceDescriptor::single(Surface::sphere()));
    }

    #[test]
    fn generic_cd4_two_components() {
        let y = lin(1, 0, 0);
        let z = lin(0, 1, 0);
        let t = lin(0, 0, 1);
        let f = y
            .mul(&y)
            .mul(&t)
            .sub(&z.mul(&z.sub(&t)).mul(&z.add(&t)));
        let d = link_cd4_generic(&f, 48).unwrap();
        assert_eq!(
            d,
            SurfaceDescriptor::from_components([Surface::sphere(), Surface::torus()])
        );
    }

    #[test]
    fn cdgt4_formula_rows() {
        use crate::plane::{binary_form_report, BivarPoly};
        let term = |a: u32, b: u32, c: i64| ((a, b), rat_int(c));
        // (z^2 - t^2)(z^2 - 4 t^2): rho = 4, h(0,1) = 4 > 0: M1 + 2 S^2.
        let h = BivarPoly::from_terms([term(2, 0, 1), term(0, 2, -1)])
            .mul(&BivarPoly::from_terms([term(2, 0, 1), term(0, 2, -4)]));
        let rep = binary_form_report(&h).unwrap();
        let d = link_cdgt4_generic(&rep).unwrap();
        assert_eq!(
            d,
            SurfaceDescriptor::from_components([
                Surface::torus(),
                Surface::sphere(),
                Surface::sphere()
            ])
        );
        // Negated: h(0,1) < 0: M2 + S^2.
        let rep = binary_form_report(&h.neg()).unwrap();
        let d = link_cdgt4_generic(&rep).unwrap();
        assert_eq!(
            d,
            SurfaceDescriptor::from_components([Surface::genus(2), Surface::sphere()])
        );
        // Five distinct real factors: M2 + 2 S^2.
        let h5 = BivarPoly::from_terms([term(0, 1, 1)])
            .mul(&BivarPoly::from_terms([term(2, 0, 1), term(0, 2, -1)]))
            .mul(&BivarPoly::from_terms([term(2, 0, 4), term(0, 2, -1)]));
        // h5 = t (z^2 - t^2)(4 z^2 - t^2) has factors t, z+-t, 2z+-t: z
        // does not divide it.
        let rep = binary_form_report(&h5).unwrap();
        let d = link_cdgt4_generic(&rep).unwrap();
        assert_eq!(
            d,
            SurfaceDescriptor::from_components([
                Surface::genus(2),
                Surface::sphere(),
                Surface::sphere()
            ])
        );
    }

    #[test]
    fn yzt_join_extraction() {
        // f3 = yzt, residual quartic -(y^4+z^4+t^4): all joins negative.
        let y = lin(1, 0, 0);
        let z = lin(0, 1, 0);
        let t = lin(0, 0, 1);
        let f3 = y.mul(&z).mul(&t);
        let q = y
            .mul(&y)
            .mul(&y)
            .mul(&y)
            .add(&z.mul(&z).mul(&z).mul(&z))
            .add(&t.mul(&t).mul(&t).mul(&t))
            .scale(&rat_int(-1));
        let joins = yzt_joins(&f3, &q).unwrap().unwrap();
        assert_eq!(joins, [true; 6]);
        // Positive quartic: all joins positive.
        let joins = yzt_joins(&f3, &q.scale(&rat_int(-1))).unwrap().unwrap();
        assert_eq!(joins, [false; 6]);
        // Vanishing at a crossing: undetermined.
        let q2 = z.mul(&z).mul(&z).mul(&z);
        assert!(yzt_joins(&f3, &q2).unwrap().is_err());
        // Not a triangle cubic.
        assert!(yzt_joins(&f3.add(&y.mul(&y).mul(&y)), &q).is_none());
    }
}
