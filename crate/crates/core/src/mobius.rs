//! Möbius transformations z ↦ (αz + β)/(γz + δ).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Polynomial;
use crate::ratmap::{compose, ProjPoint, RationalMap};

/// Entries normalized so that the first nonzero one equals 1.
#[derive(Clone, PartialEq, Eq)]
pub struct Mobius {
    e: [FieldElement; 4],
}

impl Mobius {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::Precondition("Möbius determinant is zero".into()));
        }
        let mut e = [a, b, c, d];
        let lead = e.iter().find(|x| !x.is_zero()).cloned().expect("nonzero entry");
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            for x in e.iter_mut() {
                *x = &*x * &inv;
            }
        }
        Ok(Mobius { e })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1).expect("identity is invertible")
    }

    /// z ↦ c·z.
    pub fn scaling(c: FieldElement) -> Result<Self> {
        Self::new(c, FieldElement::zero(), FieldElement::zero(), FieldElement::one())
    }

    pub fn entries(&self) -> &[FieldElement; 4] {
        &self.e
    }

    pub fn determinant(&self) -> FieldElement {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// self ∘ o.
    pub fn compose(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        Self::new(
            &(a * p) + &(b * r),
            &(a * q) + &(b * s),
            &(c * p) + &(d * r),
            &(c * q) + &(d * s),
        )
        .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = &self.e;
        Self::new(d.clone(), -b, -c, a.clone()).expect("inverse of invertible map")
    }

    pub fn to_map(&self) -> RationalMap {
        let [a, b, c, d] = &self.e;
        RationalMap::new(
            Polynomial::new(vec![b.clone(), a.clone()]),
            Polynomial::new(vec![d.clone(), c.clone()]),
        )
        .expect("Möbius maps have degree 1")
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        self.to_map().eval_point(p)
    }

    /// The Möbius map sending p1, p2, p3 to 0, 1, ∞ (points must be distinct).
    pub fn to_zero_one_infinity(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> Result<Self> {
        use ProjPoint::{Finite, Infinity};
        let one = FieldElement::one();
        let zero = FieldElement::zero();
        match (p1, p2, p3) {
            (Finite(a), Finite(b), Finite(c)) => {
                let bc = b - c;
                let ba = b - a;
                Self::new(bc.clone(), -&(a * &bc), ba.clone(), -&(c * &ba))
            }
            (Infinity, Finite(b), Finite(c)) => Self::new(zero, b - c, one, -c),
            (Finite(a), Infinity, Finite(c)) => Self::new(one.clone(), -a, one, -c),
            (Finite(a), Finite(b), Infinity) => Self::new(one, -a, zero, b - a),
            _ => Err(Error::Precondition("points must be distinct".into())),
        }
    }

    /// A Möbius map sending p to 0 and q to ∞.
    pub fn to_zero_infinity(p: &ProjPoint, q: &ProjPoint) -> Result<Self> {
        use ProjPoint::{Finite, Infinity};
        let one = FieldElement::one();
        let zero = FieldElement::zero();
        match (p, q) {
            (Finite(a), Finite(b)) => Self::new(one.clone(), -a, one, -b),
            (Finite(a), Infinity) => Self::new(one.clone(), -a, zero, one),
            (Infinity, Finite(b)) => Self::new(zero, one.clone(), one, -b),
            _ => Err(Error::Precondition("points must be distinct".into())),
        }
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_map())
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mobius({})", self)
    }
}

/// Smallest p ≤ max_order with m^p = id; None means no such p.
pub fn mobius_order(m: &Mobius, max_order: u32) -> Option<u32> {
    let mut acc = m.clone();
    for p in 1..=max_order {
        if acc.is_identity() {
            return Some(p);
        }
        acc = acc.compose(m);
    }
    None
}

/// Deterministic invertible Möbius map with entries in [−3, 3] that moves ∞.
pub fn random_mobius(seed: u64) -> Mobius {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        if v[2] == 0 {
            continue;
        }
        if let Ok(m) = Mobius::from_ints(v[0], v[1], v[2], v[3]) {
            return m;
        }
    }
}

/// Composite of a map with a Möbius on the left: m ∘ f.
pub fn post_compose(m: &Mobius, f: &RationalMap) -> RationalMap {
    compose(&m.to_map(), f)
}
