//! Named maps used by tests, the golden suite and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::FieldElement;
use crate::mobius::Mobius;
use crate::poly::Polynomial;
use crate::ratmap::{compose, conjugate, RationalMap};

/// u = (z² − 4)/(z − 1).
pub fn factor_u() -> RationalMap {
    RationalMap::from_ints(&[-4, 0, 1], &[-1, 1]).expect("degree 2")
}

/// v = (z² + 2)/(z + 1).
pub fn factor_v() -> RationalMap {
    RationalMap::from_ints(&[2, 0, 1], &[1, 1]).expect("degree 2")
}

/// f = u∘v = z(z³ − 8)/(z³ + 1).
pub fn composite_uv() -> RationalMap {
    compose(&factor_u(), &factor_v())
}

/// σ: z ↦ ζ₃z.
pub fn sigma() -> RationalMap {
    RationalMap::from_poly(Polynomial::monomial(FieldElement::zeta(3).expect("conductor 3"), 1))
        .expect("degree 1")
}

/// g = v∘w∘u and h = v∘σ∘w∘u; w must commute with σ.
pub fn twisted_pair_with(w: &RationalMap) -> (RationalMap, RationalMap) {
    let (u, v) = (factor_u(), factor_v());
    let wu = compose(w, &u);
    let g = compose(&v, &wu);
    let h = compose(&v, &compose(&sigma(), &wu));
    (g, h)
}

/// The pair with w = identity.
pub fn twisted_pair() -> (RationalMap, RationalMap) {
    twisted_pair_with(&RationalMap::identity())
}

/// Commuting pairs with known common iterates: (name, f, g, p with f^p = g^p).
pub fn synthetic_pairs() -> Vec<(&'static str, RationalMap, RationalMap, u32)> {
    let odd = RationalMap::from_ints(&[0, 1, 0, 1], &[1]).expect("degree 3");
    let quartic = RationalMap::from_ints(&[0, 1, 0, 0, 1], &[1]).expect("degree 4");
    let neg = RationalMap::from_ints(&[0, -1], &[1]).expect("degree 1");
    let w = RationalMap::from_ints(&[0, 2], &[1]).expect("degree 1");
    let (g2, h2) = twisted_pair_with(&w);
    let m = Mobius::from_ints(2, 1, 1, 1).expect("invertible");
    let (g, h) = twisted_pair();
    vec![
        ("odd-cubic", compose(&neg, &odd), odd, 2),
        ("zeta3-quartic", compose(&sigma(), &quartic), quartic.clone(), 3),
        ("equal-quartic", quartic.clone(), quartic, 1),
        ("twisted-w2z", g2, h2, 3),
        ("twisted-conjugated", conjugate(&g, &m), conjugate(&h, &m), 3),
    ]
}

/// A seeded map of exact degree `d` with small integer coefficients.
pub fn random_map(seed: u64, d: usize) -> RationalMap {
    assert!(d >= 1, "degree must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let polynomial = rng.gen_bool(0.3);
        let mut coeffs = |len: usize| -> Vec<i64> { (0..len).map(|_| rng.gen_range(-3..=3)).collect() };
        let num = coeffs(d + 1);
        let den = if polynomial { vec![1] } else { coeffs(d + 1) };
        if let Ok(f) = RationalMap::from_ints(&num, &den) {
            if f.degree() == d {
                return f;
            }
        }
    }
}
