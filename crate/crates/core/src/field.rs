//! Exact scalars in Q and the cyclotomic fields Q(ζ_k).
//!
//! An element of Q(ζ_k) is stored as an integer vector `num` (power basis
//! 1, ζ, …, ζ^{φ(k)−1}) over a common positive denominator.  Rational
//! elements are always stored at conductor 1, so that the conductor of a
//! value only grows when a genuine root of unity is involved.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub const DEFAULT_CONDUCTOR_CAP: u32 = 64;

type CycloCache = RwLock<HashMap<u32, Arc<Vec<i64>>>>;

fn cyclo_cache() -> &'static CycloCache {
    static CACHE: OnceLock<CycloCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of Φ_k, lowest degree first (monic).
pub(crate) fn cyclotomic_coeffs(k: u32, cap: u32) -> Result<Arc<Vec<i64>>> {
    if k == 0 {
        return Err(Error::Precondition("conductor must be positive".into()));
    }
    if k > cap {
        return Err(Error::ConductorCap { requested: k, cap });
    }
    if let Some(c) = cyclo_cache().read().expect("cyclotomic cache poisoned").get(&k) {
        return Ok(c.clone());
    }
    // x^k − 1 divided by every Φ_d with d | k, d < k
    let mut p: Vec<BigInt> = vec![BigInt::zero(); k as usize + 1];
    p[0] = BigInt::from(-1);
    p[k as usize] = BigInt::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            let q = cyclotomic_coeffs(d, cap)?;
            p = divide_monic_int(&p, &q);
        }
    }
    let coeffs: Vec<i64> = p
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
        .collect();
    let arc = Arc::new(coeffs);
    cyclo_cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .insert(k, arc.clone());
    Ok(arc)
}

fn divide_monic_int(p: &[BigInt], q: &[i64]) -> Vec<BigInt> {
    let n = q.len() - 1;
    let mut r = p.to_vec();
    let mut out = vec![BigInt::zero(); p.len() - n];
    for i in (0..out.len()).rev() {
        let c = r[i + n].clone();
        if c.is_zero() {
            continue;
        }
        for (j, qj) in q.iter().enumerate() {
            if *qj != 0 {
                r[i + j] -= &c * *qj;
            }
        }
        out[i] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    out
}

/// The k-th cyclotomic polynomial as a rational polynomial in x.
pub fn cyclotomic_polynomial(k: u32) -> Result<Polynomial> {
    let c = cyclotomic_coeffs(k, DEFAULT_CONDUCTOR_CAP)?;
    Ok(Polynomial::new(c.iter().map(|&v| FieldElement::from(v)).collect()))
}

/// Euler's totient, used for residue lengths.
pub fn totient(k: u32) -> u32 {
    let mut n = k;
    let mut out = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

#[derive(Clone)]
pub struct FieldElement {
    k: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field operation on two elements, lifting to a common conductor.
pub fn arith(a: &FieldElement, b: &FieldElement, op: Op) -> Result<FieldElement> {
    Ok(match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        Op::Div => a.checked_div(b)?,
    })
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            k: 1,
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from(1)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_parts(1, vec![n], BigInt::one())
    }

    /// n/d in lowest terms.
    pub fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts(1, vec![n.into()], d))
    }

    /// ζ_k = exp(2πi/k) under the standard embedding.
    pub fn zeta(k: u32) -> Result<Self> {
        Self::zeta_pow(k, 1)
    }

    /// ζ_k^j for any integer j.
    pub fn zeta_pow(k: u32, j: i64) -> Result<Self> {
        let phi = cyclotomic_coeffs(k, DEFAULT_CONDUCTOR_CAP)?;
        let e = j.rem_euclid(k as i64) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        reduce_mod(&mut v, &phi);
        Ok(Self::from_parts(k, v, BigInt::one()))
    }

    /// Builds Σ num_j ζ_k^j / den; `num` may be longer than φ(k).
    pub fn from_residue(k: u32, num: Vec<BigInt>, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = cyclotomic_coeffs(k, DEFAULT_CONDUCTOR_CAP)?;
        let mut num = num;
        reduce_mod(&mut num, &phi);
        Ok(Self::from_parts(k, num, den))
    }

    fn from_parts(k: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                den = &den / &g;
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
            }
        }
        let k = if num.len() == 1 { 1 } else { k };
        FieldElement { k, num, den }
    }

    pub fn conductor(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.den.is_one()
    }

    /// (numerator, denominator) when the element lies in Q.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        if !self.is_rational() {
            return None;
        }
        let n = self.num.first().cloned().unwrap_or_default();
        Some((n, self.den.clone()))
    }

    /// Residue coefficients (numerators over `denominator()`), lowest power first.
    pub fn residue(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Rough size in bits, used to pick cheap interpolation points and in tests.
    pub fn height_bits(&self) -> u64 {
        let n = self.num.iter().map(|c| c.bits()).max().unwrap_or(0);
        n.max(self.den.bits())
    }

    /// The same element viewed in Q(ζ_m); requires k | m.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m == self.k || self.is_rational() {
            return Ok(self.clone());
        }
        if !m.is_multiple_of(self.k) {
            return Err(Error::Precondition(format!(
                "cannot lift conductor {} to {}",
                self.k, m
            )));
        }
        let step = (m / self.k) as usize;
        let phi = cyclotomic_coeffs(m, u32::MAX)?;
        let mut v = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (j, c) in self.num.iter().enumerate() {
            v[j * step] = c.clone();
        }
        reduce_mod(&mut v, &phi);
        Ok(FieldElement {
            k: m,
            num: trimmed(v),
            den: self.den.clone(),
        })
    }

    fn common(&self, other: &Self) -> (u32, Self, Self) {
        if self.k == other.k || other.is_rational() || self.is_rational() {
            let k = self.k.max(other.k);
            return (k, self.clone(), other.clone());
        }
        let k = lcm(self.k, other.k);
        (
            k,
            self.lift(k).expect("lift to lcm"),
            other.lift(k).expect("lift to lcm"),
        )
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let (k, a, b) = self.common(other);
        let len = a.num.len().max(b.num.len());
        let mut v = vec![BigInt::zero(); len];
        let same_den = a.den == b.den;
        for (j, c) in a.num.iter().enumerate() {
            v[j] = if same_den { c.clone() } else { c * &b.den };
        }
        for (j, c) in b.num.iter().enumerate() {
            let t = if same_den { c.clone() } else { c * &a.den };
            if negate {
                v[j] -= t;
            } else {
                v[j] += t;
            }
        }
        let den = if same_den { a.den } else { a.den * b.den };
        Self::from_parts(k, v, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_rational() && other.is_rational() {
            return Self::from_parts(1, vec![&self.num[0] * &other.num[0]], &self.den * &other.den);
        }
        if self.is_rational() || other.is_rational() {
            let (r, x) = if self.is_rational() {
                (self, other)
            } else {
                (other, self)
            };
            let v = x.num.iter().map(|c| c * &r.num[0]).collect();
            return Self::from_parts(x.k, v, &x.den * &r.den);
        }
        let (k, a, b) = self.common(other);
        let mut v = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        let phi = cyclotomic_coeffs(k, u32::MAX).expect("conductor already validated");
        reduce_mod(&mut v, &phi);
        Self::from_parts(k, v, a.den * b.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_parts(1, vec![self.den.clone()], self.num[0].clone()));
        }
        // s·r ≡ 1 mod Φ_k via the extended Euclidean algorithm over Q
        let phi = cyclotomic_coeffs(self.k, u32::MAX)?;
        let r = Polynomial::new(
            self.num
                .iter()
                .map(|c| Self::from_parts(1, vec![c.clone()], self.den.clone()))
                .collect(),
        );
        let m = Polynomial::new(phi.iter().map(|&c| Self::from(c)).collect());
        let (g, s, _) = r.ext_gcd(&m);
        debug_assert_eq!(g.degree(), Some(0));
        let s = s.scale(&g.coeff(0).inv()?);
        let mut num = Vec::with_capacity(s.len());
        let mut den = BigInt::one();
        for c in s.coeffs() {
            let (_, d) = c.as_rational().expect("rational coefficients");
            den = den.lcm(&d);
        }
        for c in s.coeffs() {
            let (n, d) = c.as_rational().expect("rational coefficients");
            num.push(n * (&den / d));
        }
        Ok(Self::from_parts(self.k, num, den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
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

    /// Integer power, negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Image under ζ_k ↦ exp(2πi·index/k).
    pub fn embed_complex(&self, index: i64) -> Result<Complex64> {
        if (index.rem_euclid(self.k as i64) as u32).gcd(&self.k) != 1 {
            return Err(Error::InvalidEmbedding {
                index,
                conductor: self.k,
            });
        }
        Ok(self.embed_unchecked(index))
    }

    /// Standard embedding ζ_k ↦ exp(2πi/k).
    pub fn to_complex(&self) -> Complex64 {
        self.embed_unchecked(1)
    }

    fn embed_unchecked(&self, index: i64) -> Complex64 {
        if self.is_rational() {
            return match self.num.first() {
                None => Complex64::new(0.0, 0.0),
                Some(n) => Complex64::new(ratio_to_f64(n, &self.den), 0.0),
            };
        }
        let theta = 2.0 * PI * (index.rem_euclid(self.k as i64) as f64) / self.k as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc += Complex64::from_polar(ratio_to_f64(c, &self.den), theta * j as f64);
            }
        }
        acc
    }

    /// Formats with an explicit sign handling for use inside larger sums.
    fn terms(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for (j, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let coeff = if self.den.is_one() {
                a.to_string()
            } else {
                let g = a.gcd(&self.den);
                let (n, d) = (&a / &g, &self.den / &g);
                if d.is_one() {
                    n.to_string()
                } else {
                    format!("{}/{}", n, d)
                }
            };
            let s = match j {
                0 => coeff,
                _ => {
                    let z = if j == 1 {
                        format!("zeta{}", self.k)
                    } else {
                        format!("zeta{}^{}", self.k, j)
                    };
                    if coeff == "1" {
                        z
                    } else {
                        format!("{}*{}", coeff, z)
                    }
                }
            };
            out.push((neg, s));
        }
        out
    }

    /// True when the printed form needs parentheses as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        self.num.iter().filter(|c| !c.is_zero()).count() > 1
    }

    /// (negative, magnitude text) for use as a coefficient in front of a
    /// monomial; compound values are parenthesized and never negative.
    pub(crate) fn signed_factor(&self) -> (bool, String) {
        if self.is_compound() {
            return (false, format!("({})", self));
        }
        self.terms().pop().unwrap_or((false, "0".into()))
    }
}

/// Integer numerator rows over a shared conductor `k` and denominator.
pub(crate) fn integer_rows(xs: &[FieldElement], k: u32) -> (Vec<Vec<BigInt>>, BigInt) {
    let den = xs
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.den));
    let rows = xs
        .iter()
        .map(|x| {
            if x.is_zero() {
                return Vec::new();
            }
            let x = x.lift(k).expect("common conductor");
            let scale = &den / &x.den;
            x.num.iter().map(|c| c * &scale).collect()
        })
        .collect();
    (rows, den)
}

/// Below this length the quadratic product beats packing.
const KRONECKER_THRESHOLD: usize = 24;

fn schoolbook(ra: &[Vec<BigInt>], rb: &[Vec<BigInt>], width: usize) -> Vec<Vec<BigInt>> {
    let mut acc: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); 2 * width - 1]; ra.len() + rb.len() - 1];
    for (i, x) in ra.iter().enumerate() {
        if x.is_empty() {
            continue;
        }
        for (j, y) in rb.iter().enumerate() {
            if y.is_empty() {
                continue;
            }
            let cell = &mut acc[i + j];
            for (s, xs) in x.iter().enumerate() {
                if xs.is_zero() {
                    continue;
                }
                for (t, yt) in y.iter().enumerate() {
                    if !yt.is_zero() {
                        cell[s + t] += xs * yt;
                    }
                }
            }
        }
    }
    acc
}

/// Packs Σ c_{i,s} X^i ζ^s into one integer at X = 2^{32·words·(2w−1)},
/// ζ = 2^{32·words}; signs are carried by a positive and a negative part.
fn pack(rows: &[Vec<BigInt>], stride: usize, words: usize) -> BigInt {
    let slots = rows.len() * stride;
    let mut pos = vec![0u32; slots * words];
    let mut neg = vec![0u32; slots * words];
    for (i, row) in rows.iter().enumerate() {
        for (s, c) in row.iter().enumerate() {
            let (sign, digits) = c.to_u32_digits();
            let target = if sign == Sign::Minus { &mut neg } else { &mut pos };
            let off = (i * stride + s) * words;
            target[off..off + digits.len()].copy_from_slice(&digits);
        }
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(pos)) - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
}

/// Splits a packed product back into centered slot values.
fn unpack(p: &BigInt, slots: usize, words: usize) -> Vec<BigInt> {
    let digits = p.magnitude().to_u32_digits();
    let half = BigInt::one() << (32 * words - 1);
    let full = BigInt::one() << (32 * words);
    let mut carry = false;
    let mut out = Vec::with_capacity(slots);
    for m in 0..slots {
        let lo = (m * words).min(digits.len());
        let hi = ((m + 1) * words).min(digits.len());
        let mut v = BigInt::from_biguint(Sign::Plus, BigUint::from_slice(&digits[lo..hi]));
        if carry {
            v += 1;
        }
        carry = v >= half;
        if carry {
            v -= &full;
        }
        out.push(if p.is_negative() { -v } else { v });
    }
    debug_assert!(!carry, "packed product overflowed its slots");
    out
}

fn kronecker(ra: &[Vec<BigInt>], rb: &[Vec<BigInt>], width: usize) -> Vec<Vec<BigInt>> {
    let bits = |rows: &[Vec<BigInt>]| rows.iter().flatten().map(|c| c.bits()).max().unwrap_or(0);
    let terms = (ra.len().min(rb.len()) * width) as u64;
    let need = bits(ra) + bits(rb) + 64 - terms.leading_zeros() as u64 + 2;
    let words = need.div_ceil(32) as usize;
    let stride = 2 * width - 1;
    let prod = pack(ra, stride, words) * pack(rb, stride, words);
    let n = ra.len() + rb.len() - 1;
    let flat = unpack(&prod, n * stride, words);
    flat.chunks(stride).map(|c| c.to_vec()).collect()
}

/// Product of two polynomials given as integer rows of width `width`;
/// each output row has width 2·width − 1 and is not reduced modulo Φ.
pub(crate) fn row_product(ra: &[Vec<BigInt>], rb: &[Vec<BigInt>], width: usize) -> Vec<Vec<BigInt>> {
    if ra.len().min(rb.len()) < KRONECKER_THRESHOLD {
        schoolbook(ra, rb, width)
    } else {
        kronecker(ra, rb, width)
    }
}

/// Coefficients of the product of two polynomials.  Accumulates integer
/// convolutions over a common conductor and denominator and normalizes each
/// output coefficient once, instead of once per partial product.
pub(crate) fn convolve(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let k = a
        .iter()
        .chain(b)
        .filter(|x| !x.is_rational())
        .fold(1, |acc, x| lcm(acc, x.k));
    let (ra, da) = integer_rows(a, k);
    let (rb, db) = integer_rows(b, k);
    let width = totient(k) as usize;
    let acc = row_product(&ra, &rb, width);
    let den = &da * &db;
    acc.into_iter()
        .map(|v| FieldElement::from_residue(k, v, den.clone()).expect("conductor within cap"))
        .collect()
}

fn trimmed(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Reduces an integer vector modulo the monic Φ in place.
pub(crate) fn reduce_mod(v: &mut Vec<BigInt>, phi: &[i64]) {
    let n = phi.len() - 1;
    if v.len() > n {
        for i in (n..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi[..n].iter().enumerate() {
                match pj {
                    0 => {}
                    1 => v[i - n + j] -= &c,
                    -1 => v[i - n + j] += &c,
                    _ => v[i - n + j] -= &c * pj,
                }
            }
        }
        v.truncate(n);
    }
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// n/d as a double without overflowing on large operands.
pub fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    if n.bits() < 1000 && d.bits() < 1000 {
        return n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN);
    }
    let shift = n.bits() as i64 - d.bits() as i64;
    let t = 64 - shift;
    let q = if t >= 0 {
        (n << (t as usize)) / d
    } else {
        n / (d << ((-t) as usize))
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-t as i32)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.k == other.k || self.is_rational() || other.is_rational() {
            return self.k == other.k && self.num == other.num && self.den == other.den;
        }
        let m = lcm(self.k, other.k);
        match (self.lift(m), other.lift(m)) {
            (Ok(a), Ok(b)) => a.num == b.num && a.den == b.den,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, s)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{}", s)?,
                (0, false) => write!(f, "{}", s)?,
                (_, true) => write!(f, " - {}", s)?,
                (_, false) => write!(f, " + {}", s)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElement {
    fn from(v: i64) -> Self {
        Self::from_parts(1, vec![BigInt::from(v)], BigInt::one())
    }
}

impl From<i32> for FieldElement {
    fn from(v: i32) -> Self {
        Self::from(v as i64)
    }
}

impl From<BigInt> for FieldElement {
    fn from(v: BigInt) -> Self {
        Self::from_bigint(v)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            k: self.k,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in self.num.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));
// panics on zero divisors, like integer division; use checked_div for a Result
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::rational(n, d).unwrap()
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(*cyclotomic_coeffs(1, 64).unwrap(), vec![-1, 1]);
        assert_eq!(*cyclotomic_coeffs(3, 64).unwrap(), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_coeffs(4, 64).unwrap(), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_coeffs(6, 64).unwrap(), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_coeffs(12, 64).unwrap(), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for k in 1..=64 {
            assert_eq!(cyclotomic_coeffs(k, 64).unwrap().len() as u32 - 1, totient(k));
        }
    }

    #[test]
    fn conductor_cap_is_enforced() {
        assert!(matches!(
            cyclotomic_coeffs(65, 64),
            Err(Error::ConductorCap { requested: 65, cap: 64 })
        ));
        assert!(FieldElement::zeta(70).is_err());
    }

    #[test]
    fn zeta_cubed_is_one() {
        let z = FieldElement::zeta(3).unwrap();
        assert_eq!(&(&z * &z) * &z, FieldElement::one());
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn zeta_plus_square() {
        let z = FieldElement::zeta(3).unwrap();
        assert_eq!(&z + &(&z * &z), FieldElement::from(-1));
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for k in 1..=64u32 {
            let z = FieldElement::zeta(k).unwrap();
            let mut p = FieldElement::one();
            for j in 1..=k {
                p = &p * &z;
                assert_eq!(p.is_one(), j == k, "zeta{}^{}", k, j);
            }
        }
    }

    #[test]
    fn inverse_in_extension() {
        let z = FieldElement::zeta(5).unwrap();
        let a = &(&z * &q(3, 2)) + &FieldElement::from(7);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            arith(&FieldElement::one(), &FieldElement::zero(), Op::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mixed_conductors_lift() {
        let z3 = FieldElement::zeta(3).unwrap();
        let z4 = FieldElement::zeta(4).unwrap();
        let p = &z3 * &z4;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, FieldElement::zeta_pow(12, 7).unwrap());
        // a conductor-3 value equals its conductor-6 lift
        assert_eq!(z3, z3.lift(6).unwrap());
    }

    #[test]
    fn embeddings() {
        let h = q(1, 2).embed_complex(1).unwrap();
        assert_eq!(h, Complex64::new(0.5, 0.0));
        let z3 = FieldElement::zeta(3).unwrap().embed_complex(1).unwrap();
        assert!((z3 - Complex64::new(-0.5, 0.8660254037844386)).norm() < 1e-12);
        let z4 = FieldElement::zeta(4).unwrap().embed_complex(1).unwrap();
        assert!((z4 - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(FieldElement::zeta(4).unwrap().embed_complex(2).is_err());
    }

    #[test]
    fn display_forms() {
        let z5 = FieldElement::zeta(5).unwrap();
        assert_eq!((&(&z5 * &z5) - &FieldElement::one()).to_string(), "zeta5^2 - 1");
        let z = FieldElement::zeta(3).unwrap();
        assert_eq!(q(-5, 6).to_string(), "-5/6");
        assert_eq!((&z * &q(3, 2)).to_string(), "3/2*zeta3");
        // ζ3² reduces to −ζ3 − 1
        assert_eq!((&z * &z).to_string(), "-zeta3 - 1");
    }

    #[test]
    fn huge_ratio_to_float() {
        let n = BigInt::from(3) << 5000usize;
        let d = BigInt::from(2) << 5000usize;
        assert!((ratio_to_f64(&n, &d) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for width in [1usize, 2, 4] {
            let mut row = |len: usize| -> Vec<Vec<BigInt>> {
                (0..len)
                    .map(|_| {
                        if rng.gen_bool(0.1) {
                            return Vec::new();
                        }
                        (0..width)
                            .map(|_| {
                                let big: i64 = rng.gen_range(-1_000_000_000_000..1_000_000_000_000);
                                BigInt::from(big) * BigInt::from(big) * if rng.gen_bool(0.5) { -1 } else { 1 }
                            })
                            .collect()
                    })
                    .collect()
            };
            let (a, b) = (row(37), row(29));
            assert_eq!(kronecker(&a, &b, width), schoolbook(&a, &b, width));
        }
    }
}
