//! Floating-point helpers: polynomial roots and points of the Riemann sphere.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// A point of the Riemann sphere; `None` is ∞.
pub type SpherePoint = Option<Complex64>;

const MAX_ITER: usize = 800;

pub fn complex_coeffs(p: &Polynomial) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| c.to_complex()).collect()
}

/// (p(z), p'(z)) by Horner's rule; coefficients lowest degree first.
pub fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots with multiplicity, by Aberth–Ehrlich iteration followed
/// by Newton polishing.  The leading coefficient must be nonzero.
pub fn poly_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    if lead.norm() == 0.0 {
        return Err(Error::Precondition("leading coefficient vanishes".into()));
    }
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    // Cauchy bound for the initial circle
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let radius = radius.min(1e8);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            converged = true;
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    if !converged {
        // accept slow convergence at clustered roots when residuals are small
        let scale: f64 = monic.iter().map(|a| a.norm()).sum();
        let bad = z.iter().any(|r| {
            let (p, _) = horner(&monic, *r);
            !r.is_finite() || p.norm() > 1e-6 * scale * (1.0 + r.norm()).powi(n as i32)
        });
        if bad {
            return Err(Error::RootFinding);
        }
    }
    Ok(z)
}

/// Chordal distance on the Riemann sphere.
pub fn chordal(a: SpherePoint, b: SpherePoint) -> f64 {
    match (a, b) {
        (None, None) => 0.0,
        (Some(z), None) | (None, Some(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
        (Some(z), Some(w)) => 2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn roots_of_small_polynomials() {
        let mut r = poly_roots(&[c(-2.0), c(0.0), c(1.0)]).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c(-2f64.sqrt())).norm() < 1e-12);
        assert!((r[1] - c(2f64.sqrt())).norm() < 1e-12);

        let r = poly_roots(&[c(-1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        for z in r {
            assert!((z.powu(3) - c(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn roots_with_multiplicity() {
        // (z − 1)³ (z + 2)
        let r = poly_roots(&[c(-2.0), c(5.0), c(-3.0), c(-1.0), c(1.0)]).unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r.iter().filter(|z| (**z - c(1.0)).norm() < 1e-4).count(), 3);
        assert_eq!(r.iter().filter(|z| (**z + c(2.0)).norm() < 1e-9).count(), 1);
    }

    #[test]
    fn roots_of_high_degree() {
        // z^32 − 1
        let mut p = vec![c(0.0); 33];
        p[0] = c(-1.0);
        p[32] = c(1.0);
        for z in poly_roots(&p).unwrap() {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn chordal_metric() {
        assert_eq!(chordal(None, None), 0.0);
        assert!((chordal(Some(c(0.0)), None) - 2.0).abs() < 1e-15);
        assert!((chordal(Some(c(1.0)), Some(c(-1.0))) - 2.0).abs() < 1e-15);
    }
}
