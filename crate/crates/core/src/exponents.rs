//! Numeric probes of Lyapunov and characteristic exponents.
//!
//! The maximal-entropy measure is approximated by sampled backward orbits;
//! cycles come from the complex roots of the exact periodic polynomials.
//! Everything here is floating point and advisory.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{chordal, complex_coeffs, horner, poly_roots, SpherePoint};
use crate::periodic::periodic_polynomial;
use crate::ratmap::RationalMap;

pub const DEFAULT_DEPTH: usize = 24;
pub const DEFAULT_BREADTH: usize = 256;
pub const DEFAULT_MARGIN: f64 = 0.05;
pub const DEFAULT_N_MAX: u32 = 5;
const BOOTSTRAP_ROUNDS: usize = 200;
/// Chordal distance under which two numeric points are identified.
const POINT_TOL: f64 = 1e-7;
const SUPERATTRACTING_TOL: f64 = 1e-10;

/// f = P/Q in floating point, with both charts of the source sphere.
struct ComplexMap {
    p: Vec<Complex64>,
    q: Vec<Complex64>,
    // w^d·P(1/w) and w^d·Q(1/w)
    p_rev: Vec<Complex64>,
    q_rev: Vec<Complex64>,
}

fn padded(mut c: Vec<Complex64>, len: usize) -> Vec<Complex64> {
    c.resize(len, Complex64::new(0.0, 0.0));
    c
}

impl ComplexMap {
    fn new(f: &RationalMap) -> Self {
        let d = f.degree();
        let p = padded(complex_coeffs(f.num()), d + 1);
        let q = padded(complex_coeffs(f.den()), d + 1);
        let rev = |c: &[Complex64]| c.iter().rev().cloned().collect();
        ComplexMap {
            p_rev: rev(&p),
            q_rev: rev(&q),
            p,
            q,
        }
    }

    /// (P, P', Q, Q') in the chart containing z, with the chart coordinate.
    fn chart(&self, z: SpherePoint) -> [Complex64; 5] {
        let (w, p, q) = match z {
            Some(z) if z.norm() <= 1.0 => (z, &self.p, &self.q),
            Some(z) => (z.inv(), &self.p_rev, &self.q_rev),
            None => (Complex64::new(0.0, 0.0), &self.p_rev, &self.q_rev),
        };
        let (pv, dp) = horner(p, w);
        let (qv, dq) = horner(q, w);
        [w, pv, dp, qv, dq]
    }

    fn eval(&self, z: SpherePoint) -> SpherePoint {
        let [_, p, _, q, _] = self.chart(z);
        if q.norm() == 0.0 {
            None
        } else {
            Some(p / q)
        }
    }

    fn derivative_norm(&self, z: SpherePoint) -> f64 {
        // chart changes on the source are isometries of the round metric
        let [w, p, dp, q, dq] = self.chart(z);
        let wronskian = dp * q - p * dq;
        wronskian.norm() * (1.0 + w.norm_sqr()) / (p.norm_sqr() + q.norm_sqr())
    }

    /// All d preimages of w with multiplicity; missing roots are at ∞.
    fn preimages(&self, w: SpherePoint) -> Result<Vec<SpherePoint>> {
        let d = self.p.len() - 1;
        let c: Vec<Complex64> = match w {
            Some(w) => self.p.iter().zip(&self.q).map(|(a, b)| a - w * b).collect(),
            None => self.q.clone(),
        };
        let scale = c.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let mut top = d;
        while top > 0 && c[top].norm() <= 1e-14 * scale {
            top -= 1;
        }
        let mut out: Vec<SpherePoint> = poly_roots(&c[..=top])?.into_iter().map(Some).collect();
        out.resize(d, None);
        Ok(out)
    }
}

/// ‖f'(z)‖ for the round metric: |f'(z)|·(1+|z|²)/(1+|f(z)|²), with the
/// projective limit at poles and at ∞.
pub fn spherical_derivative_norm(f: &RationalMap, z: SpherePoint) -> f64 {
    ComplexMap::new(f).derivative_norm(z)
}

pub fn eval_sphere(f: &RationalMap, z: SpherePoint) -> SpherePoint {
    ComplexMap::new(f).eval(z)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: usize,
}

/// Averages log‖f'‖ over sampled backward orbits of a seeded random point.
/// Every retained point contributes all d of its preimages; levels up to
/// depth/2 are burn-in.
pub fn lyapunov_estimate(f: &RationalMap, depth: usize, breadth: usize, seed: u64) -> Result<LyapunovEstimate> {
    if f.degree() < 2 {
        return Err(Error::Precondition("Lyapunov estimate needs degree ≥ 2".into()));
    }
    if breadth == 0 || depth == 0 {
        return Err(Error::Precondition("depth and breadth must be positive".into()));
    }
    let map = ComplexMap::new(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let mut level: Vec<SpherePoint> = vec![Some(start)];
    let mut values = Vec::new();
    let burn_in = depth / 2;
    for step in 1..=depth {
        let mut children = Vec::with_capacity(level.len() * (map.p.len() - 1));
        for w in &level {
            children.extend(map.preimages(*w)?);
        }
        if step > burn_in {
            values.extend(
                children
                    .iter()
                    .map(|z| map.derivative_norm(*z).ln())
                    .filter(|v| v.is_finite()),
            );
        }
        level = if children.len() > breadth {
            sample(&mut rng, children.len(), breadth).into_iter().map(|i| children[i]).collect()
        } else {
            children
        };
    }
    if values.is_empty() {
        return Err(Error::Precondition("no finite samples collected".into()));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let means: Vec<f64> = (0..BOOTSTRAP_ROUNDS)
        .map(|_| (0..n).map(|_| values[rng.gen_range(0..n)]).sum::<f64>() / n as f64)
        .collect();
    let mm = means.iter().sum::<f64>() / means.len() as f64;
    let var = means.iter().map(|m| (m - mm).powi(2)).sum::<f64>() / (means.len() - 1) as f64;
    Ok(LyapunovEstimate {
        mean,
        standard_error: var.sqrt(),
        samples: n,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleReport {
    pub period: u32,
    /// Representative point; `None` is ∞.
    #[serde(serialize_with = "serialize_point")]
    pub point: SpherePoint,
    pub multiplier_modulus: f64,
    /// (1/p)·log|λ|, or −∞ for superattracting cycles.
    pub exponent: f64,
    pub superattracting: bool,
}

fn serialize_point<S: serde::Serializer>(p: &SpherePoint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(z) => s.serialize_some(&[z.re, z.im]),
        None => s.serialize_str("inf"),
    }
}

impl CycleReport {
    pub fn is_repelling(&self) -> bool {
        self.multiplier_modulus > 1.0 + 1e-9
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleCensus {
    pub cycles: Vec<CycleReport>,
    /// Periods whose roots could not be located numerically, with Φ_n degrees.
    pub skipped: Vec<(u32, usize)>,
}

/// Cycles of every period n ≤ n_max from the roots of Φ_n.  The multiplier
/// modulus is the product of spherical derivative norms along the cycle, so
/// cycles through ∞ or through poles need no special case.
pub fn characteristic_exponents(f: &RationalMap, n_max: u32) -> Result<CycleCensus> {
    let map = ComplexMap::new(f);
    let mut census = CycleCensus {
        cycles: Vec::new(),
        skipped: Vec::new(),
    };
    let mut seen: Vec<SpherePoint> = Vec::new();
    for n in 1..=n_max {
        let spectrum = periodic_polynomial(f, n)?;
        let mut candidates: Vec<SpherePoint> = match poly_roots(&complex_coeffs(&spectrum.phi)) {
            Ok(r) => r.into_iter().map(Some).collect(),
            Err(_) => {
                census.skipped.push((n, spectrum.phi.deg()));
                continue;
            }
        };
        if spectrum.infinity_is_periodic {
            candidates.push(None);
        }
        for z in candidates {
            if seen.iter().any(|s| chordal(*s, z) < POINT_TOL) {
                continue;
            }
            let mut orbit = vec![z];
            let mut w = map.eval(z);
            while orbit.len() < n as usize && chordal(w, z) >= POINT_TOL {
                orbit.push(w);
                w = map.eval(w);
            }
            // points of lower exact period were collected at their own level
            if orbit.len() != n as usize || chordal(w, z) >= POINT_TOL {
                continue;
            }
            let modulus: f64 = orbit.iter().map(|p| map.derivative_norm(*p)).product();
            let superattracting = modulus < SUPERATTRACTING_TOL;
            census.cycles.push(CycleReport {
                period: n,
                point: z,
                multiplier_modulus: modulus,
                exponent: if superattracting {
                    f64::NEG_INFINITY
                } else {
                    modulus.ln() / n as f64
                },
                superattracting,
            });
            seen.extend(orbit);
        }
    }
    Ok(census)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Verdict {
    ConsistentWithExceptional,
    NonExceptionalObserved,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub n_max: u32,
    pub depth: usize,
    pub breadth: usize,
    pub seed: u64,
    pub margin: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            n_max: DEFAULT_N_MAX,
            depth: DEFAULT_DEPTH,
            breadth: DEFAULT_BREADTH,
            seed: 0,
            margin: DEFAULT_MARGIN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub lyapunov: LyapunovEstimate,
    pub census: CycleCensus,
    /// Repelling cycles with χ > L̂ + margin.
    pub count_above: usize,
    /// Largest |χ − L̂| over repelling cycles of period n_max.
    pub top_period_deviation: f64,
    pub verdict: Verdict,
}

/// Compares cycle exponents with the Lyapunov estimate.  Exceptional maps
/// have χ = L on all but finitely many cycles, so the verdict looks only at
/// the longest period examined; superattracting, attracting and parabolic
/// cycles are left out.
pub fn exceptionality_probe(f: &RationalMap, cfg: &ProbeConfig) -> Result<ProbeReport> {
    let lyapunov = lyapunov_estimate(f, cfg.depth, cfg.breadth, cfg.seed)?;
    let census = characteristic_exponents(f, cfg.n_max)?;
    let l = lyapunov.mean;
    let repelling = || census.cycles.iter().filter(|c| c.is_repelling());
    let count_above = repelling().filter(|c| c.exponent > l + cfg.margin).count();
    let top_period_deviation = repelling()
        .filter(|c| c.period == cfg.n_max)
        .map(|c| (c.exponent - l).abs())
        .fold(0.0, f64::max);
    let verdict = if top_period_deviation < cfg.margin {
        Verdict::ConsistentWithExceptional
    } else {
        Verdict::NonExceptionalObserved
    };
    Ok(ProbeReport {
        lyapunov,
        census,
        count_above,
        top_period_deviation,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebylattes::chebyshev;
    use crate::mobius::Mobius;
    use crate::ratmap::conjugate;
    use std::f64::consts::LN_2;

    fn map(n: &[i64], d: &[i64]) -> RationalMap {
        RationalMap::from_ints(n, d).unwrap()
    }

    fn c(re: f64) -> SpherePoint {
        Some(Complex64::new(re, 0.0))
    }

    #[test]
    fn derivative_norm_examples() {
        let z2 = map(&[0, 0, 1], &[1]);
        assert!((spherical_derivative_norm(&z2, c(1.0)) - 2.0).abs() < 1e-14);
        assert_eq!(spherical_derivative_norm(&z2, c(0.0)), 0.0);
        assert_eq!(spherical_derivative_norm(&z2, None), 0.0);
        let id = RationalMap::identity();
        for z in [c(0.0), c(3.5), Some(Complex64::new(-1.0, 7.0)), None] {
            assert!((spherical_derivative_norm(&id, z) - 1.0).abs() < 1e-14);
        }
        // 1/z is an isometry, including at its pole and at ∞
        let inv = map(&[1], &[0, 1]);
        for z in [c(0.0), c(2.0), None] {
            assert!((spherical_derivative_norm(&inv, z) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn derivative_norm_matches_affine_formula() {
        let f = map(&[1, -2, 0, 1], &[3, 1]);
        let z = Complex64::new(0.3, -0.7);
        let p = |z: Complex64| (z * z * z - 2.0 * z + 1.0) / (z + 3.0);
        let h = 1e-6;
        let fp = (p(z + h) - p(z - h)) / (2.0 * h);
        let expected = fp.norm() * (1.0 + z.norm_sqr()) / (1.0 + p(z).norm_sqr());
        assert!((spherical_derivative_norm(&f, Some(z)) - expected).abs() < 1e-8);
    }

    #[test]
    fn lyapunov_of_power_maps() {
        let z2 = map(&[0, 0, 1], &[1]);
        let z3 = map(&[0, 0, 0, 1], &[1]);
        let e2 = lyapunov_estimate(&z2, DEFAULT_DEPTH, DEFAULT_BREADTH, 7).unwrap();
        let e3 = lyapunov_estimate(&z3, DEFAULT_DEPTH, DEFAULT_BREADTH, 7).unwrap();
        assert!((e2.mean - LN_2).abs() < 0.02, "{e2:?}");
        assert!((e3.mean - 3f64.ln()).abs() < 0.02, "{e3:?}");
    }

    #[test]
    fn lyapunov_of_chebyshev() {
        let e = lyapunov_estimate(&chebyshev(2, 1), DEFAULT_DEPTH, DEFAULT_BREADTH, 7).unwrap();
        assert!((e.mean - LN_2).abs() < 0.02, "{e:?}");
    }

    #[test]
    fn lyapunov_is_positive_and_stable() {
        for f in [map(&[-1, 0, 1], &[1]), map(&[-1, 0, 2], &[3, 0, 1]), map(&[0, 0, 1], &[1, 0, 3])] {
            let a = lyapunov_estimate(&f, DEFAULT_DEPTH, DEFAULT_BREADTH, 1).unwrap();
            let b = lyapunov_estimate(&f, DEFAULT_DEPTH, DEFAULT_BREADTH, 2).unwrap();
            assert!(a.mean > 3.0 * a.standard_error, "{a:?}");
            assert!((a.mean - b.mean).abs() < 3.0 * (a.standard_error + b.standard_error), "{a:?} {b:?}");
        }
    }

    #[test]
    fn lyapunov_is_conjugation_invariant() {
        let f = map(&[-1, 0, 1], &[1]);
        let m = Mobius::from_ints(1, 1, -1, 2).unwrap();
        let a = lyapunov_estimate(&f, DEFAULT_DEPTH, DEFAULT_BREADTH, 3).unwrap();
        let b = lyapunov_estimate(&conjugate(&f, &m), DEFAULT_DEPTH, DEFAULT_BREADTH, 3).unwrap();
        assert!((a.mean - b.mean).abs() < 0.05, "{a:?} {b:?}");
    }

    #[test]
    fn cycles_of_z_squared_minus_one() {
        let f = map(&[-1, 0, 1], &[1]);
        let census = characteristic_exponents(&f, 3).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let fixed = census
            .cycles
            .iter()
            .find(|r| chordal(r.point, c(golden)) < 1e-9)
            .unwrap();
        assert!((fixed.exponent - (1.0 + 5f64.sqrt()).ln()).abs() < 1e-9);
        let basin = census.cycles.iter().find(|r| r.period == 2 && r.superattracting).unwrap();
        assert_eq!(basin.exponent, f64::NEG_INFINITY);
        // ∞ is a superattracting fixed point
        assert!(census.cycles.iter().any(|r| r.point.is_none() && r.superattracting));
        // period-n cycles partition the points of exact period n
        let points: usize = census.cycles.iter().map(|r| r.period as usize).sum();
        assert_eq!(points, 3 + 2 + 6);
        assert!(census.skipped.is_empty());
    }

    #[test]
    fn cycle_exponents_are_conjugation_invariant() {
        let f = map(&[-1, 0, 1], &[1]);
        let m = Mobius::from_ints(2, 1, 1, 1).unwrap();
        let mut a: Vec<f64> = characteristic_exponents(&f, 2).unwrap().cycles.iter().map(|r| r.exponent).collect();
        let mut b: Vec<f64> = characteristic_exponents(&conjugate(&f, &m), 2)
            .unwrap()
            .cycles
            .iter()
            .map(|r| r.exponent)
            .collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!(x == y || (x - y).abs() < 1e-6, "{a:?} {b:?}");
        }
    }

    #[test]
    fn probe_profiles() {
        let cfg = ProbeConfig {
            seed: 7,
            ..ProbeConfig::default()
        };
        let z2 = exceptionality_probe(&map(&[0, 0, 1], &[1]), &cfg).unwrap();
        assert_eq!(z2.count_above, 0);
        assert_eq!(z2.verdict, Verdict::ConsistentWithExceptional);
        for r in z2.census.cycles.iter().filter(|r| !r.superattracting) {
            assert!((r.exponent - z2.lyapunov.mean).abs() < 0.05, "{r:?}");
        }

        // T₂ is flat at log 2 except on the endpoint fixed point 2, whose
        // multiplier is 4
        let t2 = exceptionality_probe(&chebyshev(2, 1), &cfg).unwrap();
        for r in t2.census.cycles.iter().filter(|r| !r.superattracting) {
            if chordal(r.point, c(2.0)) < 1e-9 {
                assert!((r.exponent - 4f64.ln()).abs() < 1e-9);
            } else {
                assert!((r.exponent - t2.lyapunov.mean).abs() < 0.05, "{r:?}");
            }
        }
        assert_eq!(t2.verdict, Verdict::ConsistentWithExceptional);

        let basilica = exceptionality_probe(&map(&[-1, 0, 1], &[1]), &cfg).unwrap();
        assert!(basilica.count_above >= 1);
        assert_eq!(basilica.verdict, Verdict::NonExceptionalObserved);
    }
}
