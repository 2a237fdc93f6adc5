//! Rational functions and dominant rational self-maps of P¹.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Polynomial;

pub use crate::mobius::{mobius_order, random_mobius, Mobius};

/// Iterates above this degree are refused.
pub const DEFAULT_DEGREE_CAP: u64 = 5000;

/// A point of P¹ over the working field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProjPoint {
    Finite(FieldElement),
    Infinity,
}

impl ProjPoint {
    pub fn finite(v: impl Into<FieldElement>) -> Self {
        ProjPoint::Finite(v.into())
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(v) => write!(f, "{}", v),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Reduced fraction num/den with monic denominator; may be constant.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RatFunc {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: Polynomial::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg() > 0 {
            (
                num.exact_quotient(&g).expect("gcd divides"),
                den.exact_quotient(&g).expect("gcd divides"),
            )
        } else {
            (num, den)
        };
        Ok(Self::normalized(num, den))
    }

    /// Assumes num and den coprime; only rescales.
    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let l = den.lead_or_zero();
        if l.is_one() {
            return RatFunc { num, den };
        }
        let inv = l.inv().expect("nonzero denominator");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFunc {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(n, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = &(&self.num * &o.den) - &(&o.num * &self.den);
        Self::new(n, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Value at a finite point, None at a pole.
    pub fn eval(&self, x: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    /// self ∘ g (g must be nonconstant or self constant).
    pub fn compose(&self, g: &RatFunc) -> RatFunc {
        let d = self.degree();
        // integral representatives keep the kernels free of gcd work
        let (a, b) = integral_pair(&self.num, &self.den);
        let (p, q) = integral_pair(&g.num, &g.den);
        let (n, m) = homogeneous_pair(&a, &b, d, &p, &q);
        // coprime by the resultant argument when both inputs are reduced
        Self::normalized(n, m)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.deg() == 0 {
            return self.num.fmt_var(var);
        }
        let n = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", self.num.fmt_var(var))
        } else {
            self.num.fmt_var(var)
        };
        format!("{}/({})", n, self.den.fmt_var(var))
    }
}

/// (L·p, L·q) with L the common denominator of all coefficients.
fn integral_pair(p: &Polynomial, q: &Polynomial) -> (Polynomial, Polynomial) {
    let l = p
        .coeffs()
        .iter()
        .chain(q.coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()));
    if l.is_one() {
        return (p.clone(), q.clone());
    }
    let l = FieldElement::from_bigint(l);
    (p.scale(&l), q.scale(&l))
}

/// Memoized powers of one polynomial.
struct Powers<'a> {
    base: &'a Polynomial,
    cache: HashMap<usize, Polynomial>,
}

impl<'a> Powers<'a> {
    fn new(base: &'a Polynomial) -> Self {
        Powers {
            base,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, k: usize) -> Polynomial {
        if k == 0 {
            return Polynomial::one();
        }
        if k == 1 {
            return self.base.clone();
        }
        if let Some(p) = self.cache.get(&k) {
            return p.clone();
        }
        let half = self.get(k / 2);
        let mut out = &half * &half;
        if k % 2 == 1 {
            out = &out * self.base;
        }
        self.cache.insert(k, out.clone());
        out
    }
}

/// Σ_{i=lo}^{hi} c_i P^{i−lo} Q^{hi−i}, split as L·Q^{hi−m+1} + U·P^{m−lo}.
fn homogeneous_eval(c: &[FieldElement], lo: usize, hi: usize, p: &mut Powers, q: &mut Powers) -> Polynomial {
    if c[lo..=hi].iter().all(|x| x.is_zero()) {
        return Polynomial::zero();
    }
    if lo == hi {
        return Polynomial::constant(c[lo].clone());
    }
    let m = (lo + hi).div_ceil(2);
    let left = homogeneous_eval(c, lo, m - 1, p, q);
    let right = homogeneous_eval(c, m, hi, p, q);
    let mut out = Polynomial::zero();
    if !left.is_zero() {
        out = &left * &q.get(hi - m + 1);
    }
    if !right.is_zero() {
        out = &out + &(&right * &p.get(m - lo));
    }
    out
}

/// (Σ a_i P^i Q^{d−i}, Σ b_i P^i Q^{d−i}) for the degree-d pair (a, b).
pub(crate) fn homogeneous_pair(
    a: &Polynomial,
    b: &Polynomial,
    d: usize,
    p: &Polynomial,
    q: &Polynomial,
) -> (Polynomial, Polynomial) {
    let mut pp = Powers::new(p);
    let mut qp = Powers::new(q);
    let ac: Vec<FieldElement> = (0..=d).map(|i| a.coeff(i)).collect();
    let bc: Vec<FieldElement> = (0..=d).map(|i| b.coeff(i)).collect();
    let n = homogeneous_eval(&ac, 0, d, &mut pp, &mut qp);
    let m = homogeneous_eval(&bc, 0, d, &mut pp, &mut qp);
    (n, m)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("z"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A nonconstant rational map in canonical form (coprime, monic denominator).
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMap {
    f: RatFunc,
}

impl RationalMap {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        Self::from_ratfunc(RatFunc::new(num, den)?)
    }

    pub fn from_ratfunc(f: RatFunc) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::ConstantMap);
        }
        Ok(RationalMap { f })
    }

    pub fn from_poly(p: Polynomial) -> Result<Self> {
        Self::from_ratfunc(RatFunc::from_poly(p))
    }

    /// Integer-coefficient map from coefficient lists, lowest degree first.
    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(Polynomial::from_ints(num), Polynomial::from_ints(den))
    }

    pub fn identity() -> Self {
        RationalMap {
            f: RatFunc::from_poly(Polynomial::x()),
        }
    }

    pub fn as_ratfunc(&self) -> &RatFunc {
        &self.f
    }

    pub fn num(&self) -> &Polynomial {
        &self.f.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.f.den
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn is_polynomial(&self) -> bool {
        self.f.den.deg() == 0
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Least common conductor of all coefficients.
    pub fn conductor(&self) -> u32 {
        num_integer::lcm(self.f.num.conductor(), self.f.den.conductor())
    }

    pub fn eval_point(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Infinity => {
                let (dn, dd) = (self.f.num.deg(), self.f.den.deg());
                if dn > dd {
                    ProjPoint::Infinity
                } else if dn == dd {
                    ProjPoint::Finite(&self.f.num.lead_or_zero() / &self.f.den.lead_or_zero())
                } else {
                    ProjPoint::Finite(FieldElement::zero())
                }
            }
            ProjPoint::Finite(x) => match self.f.eval(x) {
                Some(v) => ProjPoint::Finite(v),
                None => ProjPoint::Infinity,
            },
        }
    }

    /// True when ∞ is a fixed point.
    pub fn fixes_infinity(&self) -> bool {
        self.eval_point(&ProjPoint::Infinity).is_infinity()
    }

    pub fn to_mobius(&self) -> Option<Mobius> {
        if self.degree() != 1 {
            return None;
        }
        let (n, d) = (&self.f.num, &self.f.den);
        Mobius::new(n.coeff(1), n.coeff(0), d.coeff(1), d.coeff(0)).ok()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        self.f.fmt_var(var)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// f∘g in canonical form; deg(f∘g) = deg f · deg g.
pub fn compose(f: &RationalMap, g: &RationalMap) -> RationalMap {
    RationalMap {
        f: f.f.compose(&g.f),
    }
}

/// f^n with the default degree cap.
pub fn iterate(f: &RationalMap, n: u32) -> Result<RationalMap> {
    iterate_capped(f, n, DEFAULT_DEGREE_CAP)
}

pub fn iterate_capped(f: &RationalMap, n: u32, cap: u64) -> Result<RationalMap> {
    if n == 0 {
        return Err(Error::Precondition("iterate needs n ≥ 1".into()));
    }
    let degree = (f.degree() as u64).checked_pow(n).unwrap_or(u64::MAX);
    if degree > cap {
        return Err(Error::DegreeCap { degree, cap });
    }
    let mut out = f.clone();
    for _ in 1..n {
        out = compose(f, &out);
    }
    Ok(out)
}

pub fn commutes(f: &RationalMap, g: &RationalMap) -> bool {
    compose(f, g) == compose(g, f)
}

/// Quotient-rule derivative as a reduced fraction.
pub fn derivative(f: &RationalMap) -> RatFunc {
    f.f.derivative()
}

/// m⁻¹ ∘ f ∘ m.
pub fn conjugate(f: &RationalMap, m: &Mobius) -> RationalMap {
    let mm = m.to_map();
    let mi = m.inverse().to_map();
    compose(&mi, &compose(f, &mm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(num: &[i64], den: &[i64]) -> RationalMap {
        RationalMap::from_ints(num, den).unwrap()
    }

    #[test]
    fn uv_composition() {
        let u = map(&[-4, 0, 1], &[-1, 1]);
        let v = map(&[2, 0, 1], &[1, 1]);
        // z(z³ − 8)/(z³ + 1)
        assert_eq!(compose(&u, &v), map(&[0, -8, 0, 0, 1], &[1, 0, 0, 1]));
    }

    #[test]
    fn identity_and_powers() {
        let f = map(&[-4, 0, 1], &[-1, 1]);
        assert_eq!(compose(&f, &RationalMap::identity()), f);
        let z2 = map(&[0, 0, 1], &[1]);
        let z3 = map(&[0, 0, 0, 1], &[1]);
        assert_eq!(compose(&z2, &z3), map(&[0, 0, 0, 0, 0, 0, 1], &[1]));
    }

    #[test]
    fn iterates() {
        let z2 = map(&[0, 0, 1], &[1]);
        assert_eq!(iterate(&z2, 3).unwrap(), map(&[0, 0, 0, 0, 0, 0, 0, 0, 1], &[1]));
        assert_eq!(iterate(&z2, 1).unwrap(), z2);
        let t = map(&[1, 1], &[1]);
        assert_eq!(iterate(&t, 4).unwrap(), map(&[4, 1], &[1]));
        assert!(matches!(iterate(&z2, 13), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn commutation() {
        let z = FieldElement::zeta(3).unwrap();
        let f = map(&[0, 1, 0, 0, 1], &[1]);
        let sigma = RationalMap::from_poly(Polynomial::new(vec![FieldElement::zero(), z])).unwrap();
        assert!(commutes(&f, &sigma));
        assert!(!commutes(&map(&[0, 0, 1], &[1]), &map(&[1, 1], &[1])));
        assert!(commutes(&map(&[-2, 0, 1], &[1]), &map(&[0, -3, 0, 1], &[1])));
    }

    #[test]
    fn derivatives() {
        assert_eq!(derivative(&map(&[0, 0, 1], &[1])), RatFunc::from_poly(Polynomial::from_ints(&[0, 2])));
        let inv = derivative(&map(&[1], &[0, 1]));
        assert_eq!(inv, RatFunc::new(Polynomial::from_ints(&[-1]), Polynomial::from_ints(&[0, 0, 1])).unwrap());
        let v = derivative(&map(&[2, 0, 1], &[1, 1]));
        assert_eq!(
            v,
            RatFunc::new(Polynomial::from_ints(&[-2, 2, 1]), Polynomial::from_ints(&[1, 2, 1])).unwrap()
        );
    }

    #[test]
    fn conjugations() {
        let z2 = map(&[0, 0, 1], &[1]);
        assert_eq!(conjugate(&z2, &Mobius::identity()), z2);
        let inv = Mobius::from_ints(0, 1, 1, 0).unwrap();
        assert_eq!(conjugate(&z2, &inv), z2);
        let newton = map(&[1, 0, 1], &[0, 2]);
        let cayley = Mobius::from_ints(1, 1, -1, 1).unwrap();
        assert_eq!(conjugate(&newton, &cayley), z2);
    }

    #[test]
    fn constants_are_rejected() {
        assert_eq!(RationalMap::from_ints(&[3], &[2]), Err(Error::ConstantMap));
        assert_eq!(RationalMap::from_ints(&[1, 1], &[2, 2]), Err(Error::ConstantMap));
    }

    #[test]
    fn canonical_denominator() {
        let f = map(&[0, 0, 2], &[2]);
        assert_eq!(f.den(), &Polynomial::one());
        assert_eq!(f.num(), &Polynomial::from_ints(&[0, 0, 1]));
        let g = map(&[1, 0, 1], &[0, 2]);
        assert!(g.den().is_monic());
    }

    #[test]
    fn point_evaluation() {
        let v = map(&[2, 0, 1], &[1, 1]);
        assert_eq!(v.eval_point(&ProjPoint::finite(-1)), ProjPoint::Infinity);
        assert_eq!(v.eval_point(&ProjPoint::Infinity), ProjPoint::Infinity);
        let m = map(&[1, 2], &[3, 1]);
        assert_eq!(m.eval_point(&ProjPoint::Infinity), ProjPoint::finite(2));
    }
}
