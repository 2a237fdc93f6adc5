//! Subresultant remainder sequences over an integral domain.

use super::{pow_r, Poly, Ring};

fn div_scalar<R: Ring>(p: &Poly<R>, s: &R) -> Poly<R> {
    if s == &R::one() {
        return p.clone();
    }
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| c.exact_div(s).expect("subresultant division is exact"))
            .collect(),
    )
}

/// Last nonzero subresultant of `a` and `b`: an associate of their gcd over
/// the fraction field of R.  A gcd that is a unit there is returned as 1.
pub fn subresultant_gcd<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (mut a, mut b) = if a.deg() >= b.deg() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if b.deg() == 0 {
        return Poly::one();
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let delta = (a.deg() - b.deg()) as u32;
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b;
        }
        if r.deg() == 0 {
            return Poly::one();
        }
        a = b;
        b = div_scalar(&r, &g.times(&pow_r(&h, delta)));
        g = a.lead_or_zero();
        h = if delta == 0 {
            h
        } else {
            pow_r(&g, delta)
                .exact_div(&pow_r(&h, delta - 1))
                .expect("subresultant h update is exact")
        };
    }
}

/// Resultant of `a` and `b` over R, by the subresultant algorithm.
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let (da, db) = (a.deg(), b.deg());
    if da == 0 {
        return pow_r(&a.lead_or_zero(), db as u32);
    }
    if db == 0 {
        return pow_r(&b.lead_or_zero(), da as u32);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        negate = (da * db) % 2 == 1;
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let (deg_a, deg_b) = (a.deg(), b.deg());
        let delta = (deg_a - deg_b) as u32;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return R::zero();
        }
        b = div_scalar(&r, &g.times(&pow_r(&h, delta)));
        g = a.lead_or_zero();
        h = if delta == 0 {
            h
        } else {
            pow_r(&g, delta)
                .exact_div(&pow_r(&h, delta - 1))
                .expect("subresultant h update is exact")
        };
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let out = pow_r(&b.lead_or_zero(), da)
        .exact_div(&pow_r(&h, da - 1))
        .expect("final subresultant division is exact");
    if negate {
        out.negated()
    } else {
        out
    }
}
