//! Dense polynomials over an exact coefficient ring.
//!
//! `Poly<R>` is generic so that the same remainder-sequence code runs over
//! K = Q(ζ_k) and over K[x] (bivariate polynomials viewed as univariate in
//! the second variable).

mod bivariate;
mod gcd;
mod interp;
mod linear;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::FieldElement;

pub use bivariate::{resultant_eliminate, resultant_middle, BiPoly};
pub use gcd::{resultant, subresultant_gcd};
pub use interp::{interpolate, sample_points};
pub use linear::{linear_solve, nullspace, LinearSolution, Matrix};

/// Commutative ring with exact division where it is defined.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / o` when the quotient exists in the ring.
    fn exact_div(&self, o: &Self) -> Option<Self>;
    /// Coefficients of the product of two nonempty coefficient lists.
    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut c = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = c[i + j].plus(&x.times(y));
                }
            }
        }
        c
    }
}

impl Ring for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn from_i64(v: i64) -> Self {
        FieldElement::from(v)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o).ok()
    }
    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        crate::field::convolve(a, b)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly<R> {
    c: Vec<R>,
}

/// Univariate polynomial over the working field.
pub type Polynomial = Poly<FieldElement>;

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(v: R) -> Self {
        Self::new(vec![v])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(v: R, n: usize) -> Self {
        if v.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); n + 1];
        c[n] = v;
        Poly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn lead(&self) -> Option<&R> {
        self.c.last()
    }

    pub fn lead_or_zero(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, s: &R) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::new(self.c.iter().map(|x| x.times(s)).collect())
    }

    /// Multiplies by x^n.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); n];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.times(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// self(q(x)) by Horner.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * q) + &Self::constant(a.clone());
        }
        acc
    }

    /// Coefficients reversed: x^n·p(1/x) with n = `n`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut c = vec![R::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Self::new(c)
    }

    /// lc(b)^{δ+1}·self mod b, computed without division.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lb = b.lead_or_zero();
        let mut r = self.clone();
        let Some(da) = r.degree() else {
            return r;
        };
        if da < db {
            return r;
        }
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead_or_zero();
            let t = b.scale(&lr).shift(dr - db);
            r = &r.scale(&lb) - &t;
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&pow_r(&lb, e as u32));
        }
        r
    }

    /// Exact quotient self / b, or None when b does not divide self.
    pub fn exact_quotient(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let Some(mut dr) = self.degree() else {
            return Some(Self::zero());
        };
        if dr < db {
            return None;
        }
        let lb = b.lead_or_zero();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); dr - db + 1];
        loop {
            let t = r[dr].exact_div(&lb)?;
            let off = dr - db;
            for (j, bj) in b.c.iter().enumerate() {
                if !bj.is_zero() {
                    r[off + j] = r[off + j].minus(&t.times(bj));
                }
            }
            debug_assert!(r[dr].is_zero());
            q[off] = t;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
            match r.len().checked_sub(1) {
                None => return Some(Self::new(q)),
                Some(d) if d < db => return None,
                Some(d) => dr = d,
            }
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

pub(crate) fn pow_r<R: Ring>(a: &R, e: u32) -> R {
    let mut out = R::one();
    for _ in 0..e {
        out = out.times(a);
    }
    out
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        self.exact_quotient(o)
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negated(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        Poly::new(R::poly_mul(&self.c, &o.c))
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            c: self.c.iter().map(|a| a.negated()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                (&self).$m(&o)
            }
        }
        impl<R: Ring> $tr<&Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: &Poly<R>) -> Poly<R> {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<R: fmt::Debug> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

// Operations that need a field of coefficients.
impl Polynomial {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| FieldElement::from(v)).collect())
    }

    pub fn conductor(&self) -> u32 {
        self.c.iter().fold(1, |k, a| {
            let m = a.conductor();
            num_integer::lcm(k, m)
        })
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|a| a.is_one())
    }

    /// Divides by the leading coefficient (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by the zero polynomial");
        let inv = b.lead_or_zero().inv().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= db {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![FieldElement::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let t = &r[i + db] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                if !bj.is_zero() {
                    r[i + j] = &r[i + j] - &(&t * bj);
                }
            }
            q[i] = t;
        }
        r.truncate(db);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    /// Monic gcd through the subresultant remainder sequence; gcd(0,0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        subresultant_gcd(self, o).monic()
    }

    /// (g, s, t) with s·self + t·o = g, by the classical Euclidean algorithm.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_quotient(&g)
            .expect("gcd divides its argument")
            .monic()
    }

    /// Yun's decomposition: monic squarefree factors paired with multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.exact_quotient(&a0).expect("gcd divides");
        let c = d.exact_quotient(&a0).expect("gcd divides");
        let mut dd = &c - &b.derivative();
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&dd);
            b = b.exact_quotient(&a).expect("gcd divides");
            let c = dd.exact_quotient(&a).expect("gcd divides");
            dd = &c - &b.derivative();
            if a.deg() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Evaluation at a point of the field, with the point given by reference.
    pub fn at(&self, x: &FieldElement) -> FieldElement {
        self.eval(x)
    }

    /// Text form in the given variable, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let (neg, s) = a.signed_factor();
            let mono = match n {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, n),
            };
            let term = if n == 0 {
                s
            } else if s == "1" {
                mono
            } else {
                format!("{}*{}", s, mono)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, -1, 1, 1]));
        assert_eq!(&a - &a, Polynomial::zero());
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(b.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(a.eval(&FieldElement::from(3)), FieldElement::from(8));
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.exact_quotient(&b), Some(p(&[1, 1, 1])));
        assert_eq!(a.exact_quotient(&p(&[1, 1])), None);
    }

    #[test]
    fn pseudo_remainder_matches_scaled_remainder() {
        let a = p(&[3, 1, 4, 1, 5]);
        let b = p(&[2, 7, 3]);
        let pr = a.pseudo_rem(&b);
        let r = a.scale(&FieldElement::from(27)).rem(&b);
        assert_eq!(pr, r);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[2, 1])), p(&[1]));
        let q = p(&[4, 0, 2]);
        assert_eq!(q.gcd(&Polynomial::zero()), p(&[2, 0, 1]));
    }

    #[test]
    fn squarefree_examples() {
        // (x−1)²(x+2) → (x−1)(x+2)
        let a = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(a.squarefree_part(), &p(&[-1, 1]) * &p(&[2, 1]));
        let s = p(&[-2, 1, 1]);
        assert_eq!(s.squarefree_part(), s);
    }

    #[test]
    fn display() {
        let z3 = FieldElement::zeta(3).unwrap();
        let f = Polynomial::new(vec![FieldElement::from(0), z3.clone(), FieldElement::from(-1)]);
        assert_eq!(f.to_string(), "-z^2 + zeta3*z");
        let g = Polynomial::new(vec![FieldElement::from(2), &z3 + &FieldElement::from(1)]);
        assert_eq!(g.to_string(), "(zeta3 + 1)*z + 2");
        assert_eq!(p(&[-4, 0, 1]).fmt_var("x"), "x^2 - 4");
    }
}
