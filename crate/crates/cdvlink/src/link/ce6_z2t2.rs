//! The cE6 worked example with h_4 = +- z^2 t^2: ovals along the four
//! half-axes decided by the sign of the cubic discriminant 4 b^3 + 27 d^2.

use super::surface::{Surface, SurfaceDescriptor};
use super::LinkError;
use crate::jet::reduce::jacobian_reduce;
use crate::jet::{Jet, Monomial, Rat, Var, WeightVector};
use crate::plane::{BivarPoly, Sign, UniPoly};
use num_traits::{One, Signed, Zero};

/// Weights that isolate the cone x^2 + y^3 +- z^2 t^2.
const Z2T2_WEIGHTS: WeightVector = WeightVector([6, 4, 3, 3]);

fn lowest_term(p: &UniPoly) -> Option<(usize, Rat)> {
    p.coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
}

/// Whether the slice cubic y^3 + y phi(eps) + psi(eps) has three real roots
/// for small eps on the given side, i.e. 4 phi^3 + 27 psi^2 < 0.
fn oval_on_half_axis(
    phi: &UniPoly,
    psi: &UniPoly,
    positive_side: bool,
) -> Result<bool, LinkError> {
    let lp = lowest_term(phi);
    let lq = lowest_term(psi);
    match (lp, lq) {
        (None, _) => Ok(false),
        (Some((mp, cp)), None) => {
            let sign = if positive_side || mp % 2 == 0 {
                Sign::of(&cp).unwrap()
            } else {
                Sign::of(&cp).unwrap().flip()
            };
            Ok(sign == Sign::Minus)
        }
        (Some((mp, cp)), Some((mq, cq))) => {
            let phi_order = 3 * mp;
            let psi_order = 2 * mq;
            if phi_order < psi_order {
                let sign = if positive_side || mp % 2 == 0 {
                    Sign::of(&cp).unwrap()
                } else {
                    Sign::of(&cp).unwrap().flip()
                };
                Ok(sign == Sign::Minus)
            } else if phi_order > psi_order {
                Ok(false)
            } else {
                // Orders tie; 3 mp = 2 mq is even, so the side does not
                // matter and the leading coefficient combination decides.
                let v = Rat::from_integer(4.into()) * cp.clone() * cp.clone() * cp
                    + Rat::from_integer(27.into()) * cq.clone() * cq;
                if v.is_zero() {
                    return Err(LinkError::TruncationInconclusive(
                        "discriminant leading terms cancel exactly".into(),
                    ));
                }
                Ok(v.is_negative())
            }
        }
    }
}

/// Link of x^2 + y^3 +- z^2 t^2 + y g + h when h_4 = gamma z^2 t^2: a main
/// component plus one oval for every half-axis whose slice cubic has three
/// real roots. Positive gamma gives (1 + r) spheres, negative gives the
/// orientable surface of genus r.
pub fn link_ce6_z2t2(
    g: &BivarPoly,
    h: &BivarPoly,
    order: u32,
) -> Result<SurfaceDescriptor, LinkError> {
    let h4 = h.homogeneous_part(4);
    let gamma = h4.coeff((2, 2));
    if gamma.is_zero() || !h4.sub(&BivarPoly::from_terms([((2, 2), gamma.clone())])).is_zero() {
        return Err(LinkError::NotGeneric(
            "h_4 is not a multiple of z^2 t^2".into(),
        ));
    }
    // Bring the witness to the split form x^2 + y^3 + gamma z^2 t^2
    // + y a(z) + y b(t) + c(z) + d(t).
    let order = order.max(8);
    let mut f = Jet::from_terms(
        [
            (Monomial([2, 0, 0, 0]), Rat::one()),
            (Monomial([0, 3, 0, 0]), Rat::one()),
        ],
        order,
    );
    f = f.add(&g.to_jet(order).mul(&Jet::var(Var::Y, order)));
    f = f.add(&h.to_jet(order));
    let red = jacobian_reduce(&f, &Z2T2_WEIGHTS);
    let mut a = UniPoly::zero();
    let mut b = UniPoly::zero();
    let mut c = UniPoly::zero();
    let mut d = UniPoly::zero();
    for (m, coeff) in red.reduced.terms() {
        let (x, y, z, t) = (
            m.exponent(Var::X),
            m.exponent(Var::Y),
            m.exponent(Var::Z),
            m.exponent(Var::T),
        );
        match (x, y, z, t) {
            (2, 0, 0, 0) | (0, 3, 0, 0) => {}
            (0, 0, 2, 2) => {}
            (0, 1, zz, 0) => a = a.add(&UniPoly::monomial(coeff.clone(), zz as usize)),
            (0, 1, 0, tt) => b = b.add(&UniPoly::monomial(coeff.clone(), tt as usize)),
            (0, 0, zz, 0) => c = c.add(&UniPoly::monomial(coeff.clone(), zz as usize)),
            (0, 0, 0, tt) => d = d.add(&UniPoly::monomial(coeff.clone(), tt as usize)),
            _ => {
                return Err(LinkError::InternalContractViolation(format!(
                    "mixed monomial {m} survived the z^2 t^2 reduction"
                )))
            }
        }
    }
    // Ovals along the four half-axes: z-axes read (a, c), t-axes read (b, d).
    let mut r = 0usize;
    for (phi, psi) in [(&a, &c), (&b, &d)] {
        for side in [true, false] {
            if oval_on_half_axis(phi, psi, side)? {
                r += 1;
            }
        }
    }
    if gamma.is_positive() {
        Ok(SurfaceDescriptor::spheres(1 + r))
    } else {
        Ok(SurfaceDescriptor::single(Surface::genus(r as u32)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::rat_int;

    fn term(a: u32, b: u32, c: i64) -> ((u32, u32), Rat) {
        ((a, b), rat_int(c))
    }

    #[test]
    fn four_ovals_positive_case() {
        // x^2 + y^3 + z^2 t^2 - y z^4 - y t^4: ovals on all four half-axes.
        let g = BivarPoly::from_terms([term(4, 0, -1), term(0, 4, -1)]);
        let h = BivarPoly::from_terms([term(2, 2, 1)]);
        let d = link_ce6_z2t2(&g, &h, 12).unwrap();
        assert_eq!(d, SurfaceDescriptor::spheres(5));
    }

    #[test]
    fn one_sided_oval() {
        // b(t) = -t^3: negative only on the positive t-half-axis.
        let g = BivarPoly::from_terms([term(4, 0, 1), term(0, 3, -1)]);
        let h = BivarPoly::from_terms([term(2, 2, 1)]);
        let d = link_ce6_z2t2(&g, &h, 12).unwrap();
        assert_eq!(d, SurfaceDescriptor::spheres(2));
    }

    #[test]
    fn no_ovals_single_sphere() {
        // b(t) = +t^4 keeps one real root on both t-half-axes; a = +z^4.
        let g = BivarPoly::from_terms([term(4, 0, 1), term(0, 4, 1)]);
        let h = BivarPoly::from_terms([term(2, 2, 1)]);
        let d = link_ce6_z2t2(&g, &h, 12).unwrap();
        assert_eq!(d, SurfaceDescriptor::spheres(1));
    }

    #[test]
    fn negative_case_genus() {
        // -z^2 t^2 with four ovals: genus 4.
        let g = BivarPoly::from_terms([term(4, 0, -1), term(0, 4, -1)]);
        let h = BivarPoly::from_terms([term(2, 2, -1)]);
        let d = link_ce6_z2t2(&g, &h, 12).unwrap();
        assert_eq!(d, SurfaceDescriptor::single(Surface::genus(4)));
        // No extra data at all: genus 0, reported as M0.
        let d = link_ce6_z2t2(
            &BivarPoly::zero(),
            &BivarPoly::from_terms([term(2, 2, -1)]),
            12,
        )
        .unwrap();
        assert_eq!(d, SurfaceDescriptor::single(Surface::genus(0)));
    }

    #[test]
    fn pure_d_term_no_ovals() {
        // d(t) = t^5 alone: 27 d^2 > 0, one real root, no ovals.
        let g = BivarPoly::zero();
        let h = BivarPoly::from_terms([term(2, 2, 1), term(0, 5, 1)]);
        let d = link_ce6_z2t2(&g, &h, 12).unwrap();
        assert_eq!(d, SurfaceDescriptor::spheres(1));
    }
}
