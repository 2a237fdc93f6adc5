//! Periodic points as polynomial roots: Φ_n, multiplier spectra, the
//! derivative identity for commuting maps and common fixed points.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::mobius::random_mobius;
use crate::poly::{interpolate, resultant, sample_points, Polynomial};
use crate::quotient::{QuotientRing, Residue};
use crate::ratmap::{commutes, compose, conjugate, derivative, iterate, RationalMap};

/// Conjugation retries when moving ∞ off a periodic cycle.
pub const MOBIUS_RETRIES: u64 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSpectrum {
    pub n: u32,
    /// Finite part: roots are the finite solutions of f^n(z) = z.
    pub phi: Polynomial,
    pub infinity_is_periodic: bool,
    /// Multiplicity of ∞ as a solution; deg φ + this = d^n + 1.
    pub infinity_multiplicity: usize,
    pub multiplier_poly: Option<Polynomial>,
}

impl PeriodicSpectrum {
    pub fn total_count(&self) -> usize {
        self.phi.deg() + self.infinity_multiplicity
    }
}

/// φ = z·G − F for f^n = F/G, with ∞'s multiplicity read off the degree drop.
pub fn periodic_polynomial(f: &RationalMap, n: u32) -> Result<PeriodicSpectrum> {
    let fnn = iterate(f, n)?;
    Ok(periodic_of_iterate(&fnn, n))
}

fn periodic_of_iterate(fnn: &RationalMap, n: u32) -> PeriodicSpectrum {
    let phi = &fnn.den().shift(1) - fnn.num();
    let mult = fnn.degree() + 1 - phi.deg();
    PeriodicSpectrum {
        n,
        infinity_is_periodic: mult > 0,
        infinity_multiplicity: mult,
        phi: phi.monic(),
        multiplier_poly: None,
    }
}

/// First seeded Möbius conjugate of f whose n-th iterate does not fix ∞.
fn conjugate_off_infinity(f: &RationalMap, n: u32) -> Result<(RationalMap, crate::mobius::Mobius)> {
    for seed in 0..MOBIUS_RETRIES {
        let m = random_mobius(seed);
        let fc = conjugate(f, &m);
        if periodic_polynomial(&fc, n)?.infinity_multiplicity == 0 {
            return Ok((fc, m));
        }
    }
    Err(Error::Precondition("no conjugation moved ∞ off the periodic set".into()))
}

/// Monic polynomial whose roots are the multipliers (f^n)'(z) over all
/// solutions of f^n(z) = z, with multiplicity.
pub fn multiplier_spectrum(f: &RationalMap, n: u32) -> Result<Polynomial> {
    let (fc, _) = conjugate_off_infinity(f, n)?;
    let fnn = iterate(&fc, n)?;
    let phi = periodic_of_iterate(&fnn, n).phi;
    let dr = derivative(&fnn);
    let (num, den) = (dr.num(), dr.den());
    // Res_x(φ(x), w·D(x) − N(x)) has degree deg φ in w
    let count = phi.deg() + 1;
    let ws = sample_points(count, |_| false);
    let vals: Vec<FieldElement> = ws
        .iter()
        .map(|w| resultant(&phi, &(&den.scale(w) - num)))
        .collect();
    let spectrum = interpolate(&ws, &vals);
    if spectrum.deg() != phi.deg() {
        return Err(Error::Internal("multiplier spectrum lost degree".into()));
    }
    Ok(spectrum.monic())
}

/// Whether (f^{np})'(z) = (f^{np})'(g(z)) at every solution of f^{np}(z) = z
/// where g'(z) ≠ 0, counted with multiplicity.
///
/// With F = f^{np} and Φ its fixed-point polynomial, F(z) ≡ z mod Φ, so
/// differentiating F∘g = g∘F gives F'(g)·g' ≡ g'·F' mod Φ.  The check runs
/// in the quotient ring modulo the part S of Φ coprime to g', expanding
/// F'(w) = ∏ f'(f^i(w)) by the chain rule so only f' is ever evaluated.
pub fn verify_multiplier_identity(f: &RationalMap, g: &RationalMap, n: u32, p: u32) -> Result<bool> {
    if !commutes(&iterate(f, n)?, g) {
        return Err(Error::NonCommuting);
    }
    identity_on_fixed_points(f, g, n * p)
}

/// The divisibility test itself, without checking that g commutes.
fn identity_on_fixed_points(f: &RationalMap, g: &RationalMap, np: u32) -> Result<bool> {
    // a common conjugation keeps every fixed point of F finite; their f- and
    // g-images are fixed points of F as well
    let (fc, m) = conjugate_off_infinity(f, np)?;
    let gc = conjugate(g, &m);
    let mut support = periodic_polynomial(&fc, np)?.phi;
    let g_crit = derivative(&gc).num().clone();
    loop {
        let common = support.gcd(&g_crit);
        if common.deg() == 0 {
            break;
        }
        support = support.exact_quotient(&common).expect("gcd divides");
    }
    if support.deg() == 0 {
        return Ok(true);
    }
    let k = [support.conductor(), fc.num().conductor(), fc.den().conductor(), gc.num().conductor(), gc.den().conductor()]
        .into_iter()
        .fold(1, num_integer::lcm);
    let ring = QuotientRing::new(&support, k);
    let df = derivative(&fc);
    let e = df.num().deg().max(df.den().deg());
    // (∏ N_h, ∏ D_h) over the orbit points f^i(start(z)), in the quotient ring
    let product = |start: RationalMap| -> (Residue, Residue) {
        let mut r = start;
        let (mut top, mut bottom) = (ring.one(), ring.one());
        for _ in 0..np {
            let x = ring.element(r.num());
            let y = ring.element(r.den());
            let y_pows = powers(&ring, &y, e);
            top = ring.mul(&top, &homogeneous_at(&ring, df.num(), &x, &y_pows));
            bottom = ring.mul(&bottom, &homogeneous_at(&ring, df.den(), &x, &y_pows));
            r = compose(&fc, &r);
        }
        (top, bottom)
    };
    let (at_z_top, at_z_bottom) = product(RationalMap::identity());
    let (at_g_top, at_g_bottom) = product(gc);
    let lhs = ring.mul(&at_g_top, &at_z_bottom);
    let rhs = ring.mul(&at_z_top, &at_g_bottom);
    Ok(ring.sub(&lhs, &rhs).is_zero())
}

fn powers(ring: &QuotientRing, y: &Residue, e: usize) -> Vec<Residue> {
    let mut out = vec![ring.one()];
    for i in 0..e {
        let next = ring.mul(&out[i], y);
        out.push(next);
    }
    out
}

/// y^e·c(x/y) by Horner in x, each coefficient carrying its power of y.
fn homogeneous_at(ring: &QuotientRing, c: &Polynomial, x: &Residue, y_pows: &[Residue]) -> Residue {
    let e = y_pows.len() - 1;
    let mut acc = ring.element(&Polynomial::zero());
    for k in (0..=c.deg()).rev() {
        let coeff = ring.element(&Polynomial::constant(c.coeff(k)));
        let term = ring.mul(&coeff, &y_pows[e - k]);
        acc = ring.add(&ring.mul(&acc, x), &term);
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommonFixedPoints {
    /// Monic gcd of the finite fixed-point polynomials.
    pub poly: Polynomial,
    pub infinity: bool,
}

impl CommonFixedPoints {
    pub fn count(&self) -> usize {
        self.poly.deg() + usize::from(self.infinity)
    }
}

pub fn common_fixed_points(f: &RationalMap, g: &RationalMap) -> Result<CommonFixedPoints> {
    let (pf, pg) = (periodic_polynomial(f, 1)?, periodic_polynomial(g, 1)?);
    Ok(CommonFixedPoints {
        poly: pf.phi.gcd(&pg.phi),
        infinity: pf.infinity_is_periodic && pg.infinity_is_periodic,
    })
}

/// Φ_n with the factors shared with Φ_m removed for every proper divisor m.
/// Multiplicities of points of exact period n may be reduced as well when
/// they coincide with lower-period roots.
pub fn primitive_periodic_part(f: &RationalMap, n: u32) -> Result<Polynomial> {
    let mut part = periodic_polynomial(f, n)?.phi;
    for m in (1..n).filter(|m| n.is_multiple_of(*m)) {
        let lower = periodic_polynomial(f, m)?.phi;
        let g = part.gcd(&lower);
        part = part.exact_quotient(&g).expect("gcd divides");
    }
    Ok(part)
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// (d0, ℓ) with d0 the reference degree's primitive root (exponent vector
/// divided by its gcd) and query = d0^ℓ.
pub fn logarithmic_degree(reference: u64, query: u64) -> Result<(u64, u32)> {
    if reference < 2 || query < 2 {
        return Err(Error::Precondition("degrees must be at least 2".into()));
    }
    let fs = factor(reference);
    let g = fs.iter().fold(0u32, |acc, &(_, e)| num_integer::gcd(acc, e));
    let d0: u64 = fs.iter().map(|&(p, e)| p.pow(e / g)).product();
    let mut v = query;
    let mut l = 0;
    while v.is_multiple_of(d0) {
        v /= d0;
        l += 1;
    }
    if v != 1 {
        return Err(Error::NotAPower { base: d0, query });
    }
    Ok((d0, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{composite_uv, sigma, twisted_pair};
    use crate::chebylattes::chebyshev;
    use crate::mobius::Mobius;

    fn map(n: &[i64], d: &[i64]) -> RationalMap {
        RationalMap::from_ints(n, d).unwrap()
    }

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn periodic_examples() {
        let z2 = map(&[0, 0, 1], &[1]);
        let s = periodic_polynomial(&z2, 1).unwrap();
        assert_eq!(s.phi, poly(&[0, -1, 1]));
        assert!(s.infinity_is_periodic);
        assert_eq!(s.total_count(), 3);
        let s = periodic_polynomial(&chebyshev(2, 1), 1).unwrap();
        assert_eq!(s.phi, poly(&[-2, -1, 1]));
        assert_eq!(s.total_count(), 3);
        assert_eq!(periodic_polynomial(&z2, 2).unwrap().total_count(), 5);
    }

    #[test]
    fn parabolic_infinity_multiplicity() {
        // z + 1/z: ∞ is its only fixed point, with multiplier 1 and
        // multiplicity 3
        let f = map(&[1, 0, 1], &[0, 1]);
        let s = periodic_polynomial(&f, 1).unwrap();
        assert_eq!(s.phi.deg(), 0);
        assert_eq!(s.infinity_multiplicity, 3);
        assert_eq!(s.total_count(), 3);
    }

    #[test]
    fn spectra() {
        let z2 = map(&[0, 0, 1], &[1]);
        assert_eq!(multiplier_spectrum(&z2, 1).unwrap(), poly(&[0, 0, -2, 1]));
        // multipliers 4, −2, 0
        assert_eq!(multiplier_spectrum(&chebyshev(2, 1), 1).unwrap(), poly(&[0, -8, -2, 1]));
        let f = composite_uv();
        assert_eq!(multiplier_spectrum(&f, 1).unwrap().deg(), 5);
    }

    #[test]
    fn spectrum_is_conjugation_invariant() {
        let f = map(&[1, 0, -3, 1], &[2, 1]);
        let m = Mobius::from_ints(1, 2, -1, 3).unwrap();
        assert_eq!(
            multiplier_spectrum(&conjugate(&f, &m), 1).unwrap(),
            multiplier_spectrum(&f, 1).unwrap()
        );
    }

    #[test]
    fn period_divisor_containment() {
        let f = map(&[1, 0, -3, 1], &[2, 1]);
        let p1 = periodic_polynomial(&f, 1).unwrap().phi;
        let p2 = periodic_polynomial(&f, 2).unwrap().phi;
        assert!(p2.rem(&p1).is_zero());
        let prim = primitive_periodic_part(&chebyshev(2, 1), 2).unwrap();
        // z² − 2 has one 2-cycle: roots of z² + z − 1
        assert_eq!(prim, poly(&[-1, 1, 1]));
    }

    #[test]
    fn multiplier_identity() {
        let f = composite_uv();
        assert!(verify_multiplier_identity(&f, &f, 1, 1).unwrap());
        assert!(verify_multiplier_identity(&f, &sigma(), 1, 1).unwrap());
        let (g, h) = twisted_pair();
        assert!(verify_multiplier_identity(&g, &h, 1, 1).unwrap());
        assert!(verify_multiplier_identity(&g, &h, 3, 1).unwrap());
        let z2 = map(&[0, 0, 1], &[1]);
        // z ↦ z + 1 moves 0 (multiplier 0) to 1 (multiplier 2)
        assert!(!identity_on_fixed_points(&z2, &map(&[1, 1], &[1]), 1).unwrap());
        assert_eq!(
            verify_multiplier_identity(&z2, &map(&[1, 1], &[1]), 1, 1),
            Err(Error::NonCommuting)
        );
    }

    #[test]
    fn common_fixed() {
        let z2 = map(&[0, 0, 1], &[1]);
        let c = common_fixed_points(&z2, &z2).unwrap();
        assert_eq!((c.poly, c.infinity), (poly(&[0, -1, 1]), true));
        let c = common_fixed_points(&z2, &chebyshev(2, 1)).unwrap();
        assert_eq!(c.count(), 1);
        let (g, h) = twisted_pair();
        assert!(common_fixed_points(&g, &h).unwrap().count() <= 2);
    }

    #[test]
    fn log_degree() {
        assert_eq!(logarithmic_degree(4, 8).unwrap(), (2, 3));
        assert_eq!(logarithmic_degree(12, 12).unwrap(), (12, 1));
        assert_eq!(
            logarithmic_degree(9, 10),
            Err(Error::NotAPower { base: 3, query: 10 })
        );
    }
}
