use proptest::prelude::*;

use rittdyn::catalog::random_map;
use rittdyn::chebylattes::chebyshev;
use rittdyn::exponents::spherical_derivative_norm;
use rittdyn::field::FieldElement;
use rittdyn::mobius::{random_mobius, Mobius};
use rittdyn::numeric::{chordal, SpherePoint};
use rittdyn::parse::parse_map;
use rittdyn::periodic::{multiplier_spectrum, periodic_polynomial};
use rittdyn::poly::Polynomial;
use rittdyn::ratmap::{commutes, compose, conjugate, iterate, ProjPoint, RationalMap};
use rittdyn::semigroup::{orbit, OrbitStatus};

use num_complex::Complex64;

/// Elements of Q(ζ₁₂) with small coefficients.
fn element() -> impl Strategy<Value = FieldElement> {
    (prop::collection::vec(-4i64..=4, 4), 1i64..=5).prop_map(|(c, den)| {
        c.iter().enumerate().fold(FieldElement::zero(), |acc, (j, &a)| {
            let term = &FieldElement::rational(a, den).unwrap() * &FieldElement::zeta_pow(12, j as i64).unwrap();
            &acc + &term
        })
    })
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-5i64..=5, 1..5).prop_map(|c| Polynomial::from_ints(&c))
}

fn small_map() -> impl Strategy<Value = RationalMap> {
    (any::<u64>(), 1usize..=2).prop_map(|(s, d)| random_map(s, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_is_a_field(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn complex_embedding_is_a_homomorphism(a in element(), b in element()) {
        let (x, y) = (a.to_complex(), b.to_complex());
        prop_assert!(((&a * &b).to_complex() - x * y).norm() < 1e-9 * (1.0 + (x * y).norm()));
        prop_assert!(((&a + &b).to_complex() - (x + y)).norm() < 1e-9 * (1.0 + (x + y).norm()));
    }

    #[test]
    fn division_and_gcd(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.deg() < b.deg());
        let g = a.gcd(&b);
        prop_assert!(b.rem(&g).is_zero());
        prop_assert!(a.rem(&g).is_zero());
    }

    #[test]
    fn display_parses_back(f in small_map(), m in any::<u64>()) {
        let g = conjugate(&f, &random_mobius(m));
        prop_assert_eq!(parse_map(&g.to_string(), 1).unwrap(), g.clone());
    }

    #[test]
    fn composition_is_associative(f in small_map(), g in small_map(), h in small_map()) {
        prop_assert_eq!(compose(&compose(&f, &g), &h), compose(&f, &compose(&g, &h)));
        prop_assert_eq!(compose(&f, &g).degree(), f.degree() * g.degree());
    }

    #[test]
    fn composition_agrees_with_evaluation(f in small_map(), g in small_map(), k in -6i64..6) {
        let x = ProjPoint::finite(FieldElement::rational(k, 5).unwrap());
        prop_assert_eq!(compose(&f, &g).eval_point(&x), f.eval_point(&g.eval_point(&x)));
    }

    #[test]
    fn iterates_commute(f in small_map(), n in 1u32..4) {
        prop_assert!(commutes(&f, &iterate(&f, n).unwrap()));
    }

    #[test]
    fn conjugation_respects_composition(f in small_map(), g in small_map(), m in any::<u64>()) {
        let m = random_mobius(m);
        prop_assert_eq!(conjugate(&compose(&f, &g), &m), compose(&conjugate(&f, &m), &conjugate(&g, &m)));
    }

    #[test]
    fn mobius_group_laws(a in any::<u64>(), b in any::<u64>()) {
        let (p, q) = (random_mobius(a), random_mobius(b));
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(&q).to_map(), compose(&p.to_map(), &q.to_map()));
    }

    #[test]
    fn chebyshev_composition(d in 1u32..7, e in 1u32..7) {
        prop_assert_eq!(compose(&chebyshev(d, 1), &chebyshev(e, 1)), chebyshev(d * e, 1));
        prop_assert!(commutes(&chebyshev(d, 1), &chebyshev(e, 1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn periodic_points_number_d_pow_n_plus_one(seed in any::<u64>(), d in 2usize..=3, n in 1u32..=2) {
        let f = random_map(seed, d);
        prop_assert_eq!(periodic_polynomial(&f, n).unwrap().total_count(), d.pow(n) + 1);
    }

    #[test]
    fn multiplier_spectrum_is_conjugation_invariant(seed in any::<u64>(), m in any::<u64>()) {
        let f = random_map(seed, 2);
        let g = conjugate(&f, &random_mobius(m));
        prop_assert_eq!(multiplier_spectrum(&f, 1).unwrap(), multiplier_spectrum(&g, 1).unwrap());
    }

    #[test]
    fn rotations_are_spherical_isometries(seed in any::<u64>(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        // conjugating by z ↦ iz leaves the spherical derivative unchanged at corresponding points
        let f = random_map(seed, 2);
        let rot = Mobius::new(
            FieldElement::zeta(4).unwrap(),
            FieldElement::zero(),
            FieldElement::zero(),
            FieldElement::one(),
        )
        .unwrap();
        let g = conjugate(&f, &rot);
        let z = Complex64::new(re, im);
        let a = spherical_derivative_norm(&f, Some(z));
        prop_assert!(a.is_finite());
        // whichever direction `conjugate` uses, one of the two rotated points matches
        let c = spherical_derivative_norm(&g, Some(z * Complex64::i()));
        let d = spherical_derivative_norm(&g, Some(-z * Complex64::i()));
        prop_assert!((a - c).abs() < 1e-7 * (1.0 + a) || (a - d).abs() < 1e-7 * (1.0 + a));
    }

    #[test]
    fn closed_orbits_are_invariant(with_power in any::<bool>(), start in 0u32..6) {
        let rot = RationalMap::from_poly(Polynomial::monomial(FieldElement::zeta(6).unwrap(), 1)).unwrap();
        let gens = [rot, RationalMap::from_ints(&[0, 0, 0, 0, 0, 1], &[1]).unwrap()];
        // rotation alone, or together with z⁵
        let gens = &gens[..1 + usize::from(with_power)];
        let p = ProjPoint::Finite(FieldElement::zeta_pow(6, start as i64).unwrap());
        let ex = orbit(gens, &p, 1000);
        prop_assert_eq!(ex.status, OrbitStatus::Closed);
        for g in gens {
            for q in &ex.points {
                prop_assert!(ex.points.contains(&g.eval_point(q)));
            }
        }
    }
}

#[test]
fn chordal_distance_is_a_metric_on_samples() {
    let pts: Vec<SpherePoint> = vec![None, Some(Complex64::new(0.0, 0.0)), Some(Complex64::new(1.0, 2.0)), Some(Complex64::new(-3.0, 0.5))];
    for &a in &pts {
        assert!(chordal(a, a) < 1e-12);
        for &b in &pts {
            assert!((chordal(a, b) - chordal(b, a)).abs() < 1e-12);
            for &c in &pts {
                assert!(chordal(a, c) <= chordal(a, b) + chordal(b, c) + 1e-12);
            }
        }
    }
}
