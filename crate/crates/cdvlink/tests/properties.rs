//! Property tests for the module-level invariants: ring laws up to
//! truncation, substitution composition, classification invariance, and the
//! independent combinatorial and numeric oracles for branch counting.

use cdvlink::classify::{classify, ClassifyOptions, Family};
use cdvlink::jet::{mono, rat, rat_int, Jet, Monomial, Rat, Var};
use cdvlink::plane::{branch_report, BivarPoly, Sign};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn arb_monomial(max_degree: u32) -> impl Strategy<Value = Monomial> {
    (0u32..=2, 0u32..=2, 0u32..=3, 0u32..=3)
        .prop_filter("degree in range", move |(a, b, c, d)| {
            let deg = a + b + c + d;
            deg >= 1 && deg <= max_degree
        })
        .prop_map(|(a, b, c, d)| mono(a, b, c, d))
}

fn arb_jet(order: u32) -> impl Strategy<Value = Jet> {
    prop::collection::vec((arb_monomial(5), arb_rat()), 1..6)
        .prop_map(move |terms| Jet::from_terms(terms, order))
}

fn arb_germ_images(order: u32) -> impl Strategy<Value = [Jet; 4]> {
    let img = || prop::collection::vec((arb_monomial(3), arb_rat()), 0..3);
    (img(), img(), img(), img()).prop_map(move |(a, b, c, d)| {
        let mut images = Jet::identity_images(order);
        for (i, extra) in [a, b, c, d].into_iter().enumerate() {
            for (m, coeff) in extra {
                images[i].add_term(m, coeff);
            }
        }
        images
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jet_ring_laws(a in arb_jet(7), b in arb_jet(7), c in arb_jet(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn unit_inverse_round_trip(u0 in arb_jet(7)) {
        // Force a unit by bumping the constant term to one plus something.
        let mut u = u0;
        u.add_term(Monomial::one(), rat_int(1));
        prop_assume!(!u.constant_term().is_zero());
        let v = u.invert_unit().unwrap();
        prop_assert_eq!(u.mul(&v), Jet::one(7));
    }

    #[test]
    fn substitution_composes(f in arb_jet(6), phi in arb_germ_images(6), psi in arb_germ_images(6)) {
        // substitute(substitute(F, phi), psi) = substitute(F, phi o psi):
        // applying psi to each component of phi.
        let lhs = f.substitute(&phi).unwrap().substitute(&psi).unwrap();
        let composed = [
            phi[0].substitute(&psi).unwrap(),
            phi[1].substitute(&psi).unwrap(),
            phi[2].substitute(&psi).unwrap(),
            phi[3].substitute(&psi).unwrap(),
        ];
        let rhs = f.substitute(&composed).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weighted_pieces_sum(f in arb_jet(7), w in (1u32..=4, 1u32..=4, 1u32..=4, 1u32..=4)) {
        let weights = cdvlink::jet::WeightVector::new([w.0, w.1, w.2, w.3]);
        let pieces = f.weighted_decompose(&weights);
        let mut sum = Jet::zero(7);
        let mut last = None;
        for (d, p) in &pieces {
            sum = sum.add(p);
            if let Some(prev) = last {
                prop_assert!(*d > prev, "degrees must strictly increase");
            }
            last = Some(*d);
        }
        prop_assert_eq!(sum, f);
    }
}

/// Independent combinatorial oracle: for a product of distinct real lines,
/// the negative-arc count equals the number of negative sectors obtained by
/// direct sign evaluation between consecutive line directions.
#[test]
fn branch_count_matches_sector_oracle() {
    // Lines a z + b t with distinct ratios; try several configurations.
    let line_sets: Vec<Vec<(i64, i64)>> = vec![
        vec![(1, 0), (0, 1)],
        vec![(1, 0), (0, 1), (1, -1)],
        vec![(1, 0), (0, 1), (1, -1), (1, 1)],
        vec![(1, 2), (2, 1), (1, -3)],
        vec![(1, 0), (1, 5), (5, 1), (1, -5), (5, -1)],
    ];
    for lines in line_sets {
        let mut f = BivarPoly::from_terms([((0, 0), rat_int(1))]);
        for &(a, b) in &lines {
            f = f.mul(&BivarPoly::from_terms([
                ((1, 0), rat_int(a)),
                ((0, 1), rat_int(b)),
            ]));
        }
        let report = branch_report(&f).unwrap();
        // Sector oracle: sort the 2m line directions by angle, evaluate the
        // sign in each sector at the angular midpoint (on the unit circle,
        // scaled rationally to avoid trig: use a fine rational sweep).
        let samples = 4096usize;
        let mut signs: Vec<i8> = Vec::with_capacity(samples);
        for k in 0..samples {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / samples as f64;
            let (z, t) = (theta.cos(), theta.sin());
            let mut v = 0.0f64;
            for (&(za, tb), coeff) in f.terms() {
                let c = coeff.to_f64().unwrap();
                v += c * z.powi(za as i32) * t.powi(tb as i32);
            }
            signs.push(if v > 0.0 { 1 } else { -1 });
        }
        let mut neg_blocks = 0usize;
        for k in 0..samples {
            if signs[k] == -1 && signs[(k + samples - 1) % samples] == 1 {
                neg_blocks += 1;
            }
        }
        assert_eq!(
            report.m, neg_blocks,
            "lines {lines:?}: symbolic m vs sector count"
        );
    }
}

/// Numeric agreement of the stabilized arc data on every plane-curve input
/// used by the link tables: sample the small circle densely in floating
/// point and compare negative-arc counts.
#[test]
fn branch_count_matches_numeric_sweep() {
    let inputs: Vec<BivarPoly> = vec![
        BivarPoly::from_terms([((1, 1), rat_int(1))]),
        BivarPoly::from_terms([((3, 0), rat_int(1)), ((0, 2), rat_int(-1))]),
        BivarPoly::from_terms([((3, 0), rat_int(1)), ((0, 4), rat_int(-1))]),
        BivarPoly::from_terms([((2, 1), rat_int(1)), ((0, 3), rat_int(-1))]),
        BivarPoly::from_terms([((4, 0), rat_int(1)), ((0, 4), rat_int(1))]),
        BivarPoly::from_terms([((4, 0), rat_int(-1)), ((2, 2), rat_int(3)), ((0, 4), rat_int(-1))]),
    ];
    for f in inputs {
        let report = branch_report(&f).unwrap();
        let eps = report.epsilon_used.to_f64().unwrap();
        let samples = 8192usize;
        let mut signs: Vec<i8> = Vec::with_capacity(samples);
        for k in 0..samples {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / samples as f64;
            let (z, t) = (eps * theta.cos(), eps * theta.sin());
            let mut v = 0.0f64;
            for (&(za, tb), coeff) in f.terms() {
                let c = coeff.to_f64().unwrap();
                v += c * z.powi(za as i32) * t.powi(tb as i32);
            }
            signs.push(if v > 0.0 { 1 } else { -1 });
        }
        let mut neg_blocks = 0usize;
        for k in 0..samples {
            if signs[k] == -1 && signs[(k + samples - 1) % samples] == 1 {
                neg_blocks += 1;
            }
        }
        let expected = if report.crossings == 0 {
            if report.definite_sign == Some(Sign::Minus) {
                1
            } else {
                0
            }
        } else {
            report.m
        };
        assert_eq!(expected, neg_blocks, "input {f}");
    }
}

/// Classification is invariant under invertible linear coordinate changes
/// and under scaling by nonzero rationals.
#[test]
fn classification_linear_invariance() {
    let germs = [
        "x^2+y^2+z^2-t^2",
        "x^2+y^2+z^3+t^3",
        "x^2+y^2*z+y*t^3+z^4",
        "x^2+y^3+z^4+t^4",
        "x^2+y^3+z^5+t^5",
        "x^2+y^3+y*z^3+z^5*t",
    ];
    // A few fixed unimodular integer matrices (products of elementary
    // operations), applied as substitutions.
    let changes: Vec<[[i64; 4]; 4]> = vec![
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [2, 1, 0, 0], [0, -1, 1, 0], [0, 0, 0, 1]],
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]],
        [[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, 1]],
        [[1, -1, 0, 1], [0, 1, 1, 0], [0, 0, 1, -1], [0, 0, 0, 1]],
    ];
    // Dense transformed germs are classified at order 8, where every family
    // decision here is already stable; this keeps the exact arithmetic quick.
    let opts = ClassifyOptions {
        truncation: 8,
        max_truncation: 16,
    };
    for text in germs {
        let f = cdvlink::parse::parse_input(text).unwrap().to_jet(8);
        let base = classify(&f, opts).unwrap();
        assert_ne!(base.family, Family::NotCDV);
        for m in &changes {
            let mut images = Jet::identity_images(8);
            for i in 0..4 {
                let mut img = Jet::zero(8);
                for j in 0..4 {
                    if m[i][j] != 0 {
                        img.add_term(Monomial::var(Var::from_index(j)), rat_int(m[i][j]));
                    }
                }
                images[i] = img;
            }
            let g = f.substitute(&images).unwrap();
            let c = classify(&g, opts).unwrap();
            assert_eq!(c.family, base.family, "{text} under {m:?}");
            assert_eq!(c.subtype, base.subtype, "{text} under {m:?}");
        }
        for scale in [rat_int(3), rat(-2, 5), rat(7, 2)] {
            let c = classify(&f.scale(&scale), opts).unwrap();
            assert_eq!(c.family, base.family, "{text} scaled by {scale}");
            assert_eq!(c.subtype, base.subtype, "{text} scaled by {scale}");
        }
    }
}

/// Every transform log replays: the logged substitutions applied to the raw
/// input reproduce the witness exactly.
#[test]
fn transform_logs_replay() {
    let germs = [
        "x^2+y^2+z^2+t^6",
        "x^2+2*x*y+y^2+y^3+z^3+t^3",
        "x^2+y^2*z+y*t^3+z^4",
        "x^2+(y+z)^2*(y-z)+t^4*y+t^5",
        "x^2+y^3+3*y^2*z+3*y*z^2+z^3+t^4",
        "x^2+y^3+z^2*t^2-y*z^4-y*t^4",
    ];
    for text in germs {
        let f = cdvlink::parse::parse_input(text).unwrap().to_jet(12);
        let class = classify(&f, ClassifyOptions::default()).unwrap();
        if class.family == Family::NotCDV {
            continue;
        }
        let replayed = class.log.replay(&f.with_order(class.truncation)).unwrap();
        assert_eq!(replayed, class.witness, "{text}");
    }
}

/// Worked examples for the reduce operations.
#[test]
fn reduce_examples() {
    // Rank three with a unit tail: a x^2 + ... + d t^m.
    let f = cdvlink::parse::parse_input("x^2+y^2+z^2+t^6")
        .unwrap()
        .to_jet(12);
    let c = classify(&f, ClassifyOptions::default()).unwrap();
    assert_eq!(c.family, Family::CA1);
    match c.case {
        cdvlink::CaseTag::Ca1 { case, table_n, m } => {
            assert_eq!(case, 3);
            assert_eq!(table_n, 3);
            assert_eq!(m, 6);
        }
        other => panic!("unexpected {other:?}"),
    }
    // n = mult - 1 for the rank-two path.
    let f = cdvlink::parse::parse_input("x^2+y^2+z^3+t^3")
        .unwrap()
        .to_jet(12);
    let c = classify(&f, ClassifyOptions::default()).unwrap();
    assert_eq!(c.family, Family::CA);
    assert_eq!(c.subtype, Some(2));
    // The cD example with the double line (y+z)^2 (y-z).
    let f = cdvlink::parse::parse_input("x^2+(y+z)^2*(y-z)+t^4*y+t^5")
        .unwrap()
        .to_jet(12);
    let c = classify(&f, ClassifyOptions::default()).unwrap();
    assert_eq!(c.family, Family::CD);
    // Hyperbolic quadric with cross terms.
    let f = cdvlink::parse::parse_input("x^2-y^2+x*z+z*t")
        .unwrap()
        .to_jet(12);
    let c = classify(&f, ClassifyOptions::default()).unwrap();
    assert!(c.family.is_ca());
}
