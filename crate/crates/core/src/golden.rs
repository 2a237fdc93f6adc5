//! The golden suite: every exact reference identity plus the numeric
//! exponent probes at configured tolerances, run as named checks.

use std::time::Instant;

use serde::Serialize;

use crate::catalog::{composite_uv, factor_u, factor_v, random_map, sigma, synthetic_pairs, twisted_pair};
use crate::chebylattes::{chebyshev, semiconjugacy_holds};
use crate::correspondence::{verify_lemma4, verify_lemma5};
use crate::error::Result;
use crate::exponents::{characteristic_exponents, lyapunov_estimate};
use crate::field::FieldElement;
use crate::periodic::{common_fixed_points, periodic_polynomial, verify_multiplier_identity};
use crate::poly::Polynomial;
use crate::ratmap::{commutes, compose, iterate, ProjPoint, RationalMap};
use crate::ritt::{common_iterate_equal_degree, extend_tail, ritt_sequence, verify_step, DEFAULT_MAX_ORDER, DEFAULT_MAX_STEPS};
use crate::semigroup::{action_table, orbit, verify_identity_eq8, OrbitStatus};

#[derive(Debug, Clone, Serialize)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone)]
pub struct GoldenConfig {
    pub seed: u64,
    pub k_max: usize,
    pub depth: usize,
    pub breadth: usize,
    /// Allowed |L̂ − log d| for maps with known Lyapunov exponent.
    pub lyapunov_tol: f64,
    /// Allowed |χ − L̂| on flat cycle profiles, and the gap for χ above L̂.
    pub exponent_margin: f64,
    /// Source of T_d; replaceable so a broken recursion can be shown to fail.
    pub chebyshev: fn(u32) -> RationalMap,
}

fn chebyshev_plus(d: u32) -> RationalMap {
    chebyshev(d, 1)
}

impl Default for GoldenConfig {
    fn default() -> Self {
        GoldenConfig {
            seed: 7,
            k_max: crate::correspondence::DEFAULT_K_MAX,
            depth: crate::exponents::DEFAULT_DEPTH,
            breadth: crate::exponents::DEFAULT_BREADTH,
            lyapunov_tol: 0.02,
            exponent_margin: 0.05,
            chebyshev: chebyshev_plus,
        }
    }
}

type Outcome = Result<std::result::Result<String, String>>;
type NamedCheck<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn expect(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> std::result::Result<String, String> {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail.into())
    }
}

fn map(n: &[i64], d: &[i64]) -> RationalMap {
    RationalMap::from_ints(n, d).expect("nonconstant literal")
}

fn factor_composition() -> Outcome {
    let f = compose(&factor_u(), &factor_v());
    let expected = map(&[0, -8, 0, 0, 1], &[1, 0, 0, 1]);
    Ok(expect(f == expected, format!("u∘v = {f}"), format!("u∘v = {f}, expected {expected}")))
}

fn twisted_common_iterate() -> Outcome {
    let (g, h) = twisted_pair();
    if !commutes(&g, &h) {
        return Ok(Err("g and h do not commute".into()));
    }
    let p = common_iterate_equal_degree(&g, &h, DEFAULT_MAX_STEPS, DEFAULT_MAX_ORDER)?;
    let cubes = iterate(&g, 3)? == iterate(&h, 3)?;
    Ok(expect(p == 3 && cubes, "p = 3, g³ = h³", format!("p = {p}, g³ = h³: {cubes}")))
}

fn rotation_iterates() -> Outcome {
    for n in [2u32, 3] {
        // f = z·(z^n + 1)
        let f = RationalMap::from_poly(&Polynomial::monomial(FieldElement::one(), n as usize + 1) + &Polynomial::x())?;
        let rot = RationalMap::from_poly(Polynomial::monomial(FieldElement::zeta(n)?, 1))?;
        if !commutes(&f, &rot) {
            return Ok(Err(format!("f does not commute with ζ{n}·z")));
        }
        if iterate(&compose(&rot, &f), n)? != iterate(&f, n)? {
            return Ok(Err(format!("(σf)^{n} ≠ f^{n}")));
        }
    }
    Ok(Ok("n = 2, 3".into()))
}

fn chebyshev_laws(cfg: &GoldenConfig) -> Outcome {
    let t = cfg.chebyshev;
    if t(2) != map(&[-2, 0, 1], &[1]) {
        return Ok(Err(format!("T₂ = {}", t(2))));
    }
    if t(3) != map(&[0, -3, 0, 1], &[1]) {
        return Ok(Err(format!("T₃ = {}", t(3))));
    }
    for d in 1..=8 {
        if !semiconjugacy_holds(&t(d), d) {
            return Ok(Err(format!("semiconjugacy fails for T{d}")));
        }
    }
    for d in 1..=6 {
        for e in 1..=6 {
            if compose(&t(d), &t(e)) != t(d * e) {
                return Ok(Err(format!("T{d}∘T{e} ≠ T{}", d * e)));
            }
        }
    }
    Ok(Ok("recursion, semiconjugacy d ≤ 8, composition d,e ≤ 6".into()))
}

fn periodic_counts(cfg: &GoldenConfig) -> Outcome {
    for i in 0..20u64 {
        let d = 2 + (i % 2) as usize;
        let f = random_map(cfg.seed.wrapping_mul(1000) + i, d);
        for n in 1..=3u32 {
            let s = periodic_polynomial(&f, n)?;
            let expected = d.pow(n) + 1;
            if s.total_count() != expected {
                return Ok(Err(format!("{f}, n = {n}: {} ≠ {expected}", s.total_count())));
            }
        }
    }
    Ok(Ok("20 maps, n ≤ 3".into()))
}

fn multiplier_identity() -> Outcome {
    let f = composite_uv();
    let (g, h) = twisted_pair();
    for (n, p) in [(1, 1), (3, 1)] {
        if !verify_multiplier_identity(&f, &sigma(), n, p)? {
            return Ok(Err(format!("(f, σ) at ({n},{p})")));
        }
        if !verify_multiplier_identity(&g, &h, n, p)? {
            return Ok(Err(format!("(g, h) at ({n},{p})")));
        }
    }
    Ok(Ok("(f, σ) and (g, h) at (1,1), (3,1)".into()))
}

fn ritt_invariants() -> Outcome {
    let (g, h) = twisted_pair();
    let mut pairs = vec![("twisted".to_string(), g, h)];
    pairs.extend(synthetic_pairs().into_iter().map(|(n, f, g, _)| (n.to_string(), f, g)));
    let mut total = 0;
    for (name, f, g) in pairs {
        let seq = ritt_sequence(&f, &g, DEFAULT_MAX_STEPS)?;
        for (i, s) in seq.steps.iter().enumerate() {
            verify_step(s)?;
            if i > 0 {
                let prev = &seq.steps[i - 1];
                if compose(&prev.a, &s.b) != compose(&prev.b, &s.a) || s.r > prev.r {
                    return Ok(Err(format!("{name}: step {i}")));
                }
            }
        }
        total += seq.steps.len();
    }
    Ok(Ok(format!("{total} steps verified")))
}

fn orbit_size_bound(cfg: &GoldenConfig) -> Outcome {
    let (g, h) = twisted_pair();
    let rep = verify_lemma4(&g, &h, cfg.k_max)?;
    Ok(expect(
        rep.bound_ok,
        format!("s_c = {} ≤ {}", rep.s_c, rep.bound),
        format!("s_c = {} > {}", rep.s_c, rep.bound),
    ))
}

fn orbit_size_growth(cfg: &GoldenConfig) -> Outcome {
    let (g, h) = twisted_pair();
    let mut seq = ritt_sequence(&g, &h, DEFAULT_MAX_STEPS)?;
    extend_tail(&mut seq, 2)?;
    let entries = verify_lemma5(&seq, cfg.k_max)?;
    let bad = entries.iter().find(|e| !e.holds);
    Ok(match bad {
        None if !entries.is_empty() => Ok(format!("{} tail pairs", entries.len())),
        None => Err("no stabilized tail".into()),
        Some(e) => Err(format!("step {}: {} < {}·{}", e.n, e.s_next, e.r, e.s_n)),
    })
}

fn exponent_probes(cfg: &GoldenConfig) -> Outcome {
    let ln2 = 2f64.ln();
    let z2 = map(&[0, 0, 1], &[1]);
    for (f, expected, label) in [
        (z2.clone(), ln2, "z²"),
        (map(&[0, 0, 0, 1], &[1]), 3f64.ln(), "z³"),
        ((cfg.chebyshev)(2), ln2, "T₂"),
    ] {
        let e = lyapunov_estimate(&f, cfg.depth, cfg.breadth, cfg.seed)?;
        if (e.mean - expected).abs() >= cfg.lyapunov_tol {
            return Ok(Err(format!("L̂({label}) = {:.4}", e.mean)));
        }
    }
    let l = lyapunov_estimate(&z2, cfg.depth, cfg.breadth, cfg.seed)?.mean;
    let census = characteristic_exponents(&z2, 5)?;
    if let Some(c) = census
        .cycles
        .iter()
        .find(|c| !c.superattracting && (c.exponent - l).abs() >= cfg.exponent_margin)
    {
        return Ok(Err(format!("z² cycle of period {} has χ = {:.4}", c.period, c.exponent)));
    }
    let basilica = map(&[-1, 0, 1], &[1]);
    let l = lyapunov_estimate(&basilica, cfg.depth, cfg.breadth, cfg.seed)?.mean;
    let above = characteristic_exponents(&basilica, 5)?
        .cycles
        .iter()
        .filter(|c| c.exponent > l + cfg.exponent_margin)
        .count();
    Ok(expect(above >= 1, format!("z² − 1: {above} cycles above L̂"), "z² − 1: no cycle above L̂"))
}

fn commutator_identity() -> Outcome {
    let (g, h) = twisted_pair();
    let ok = verify_identity_eq8(&chebyshev(2, 1), &chebyshev(3, 1), 1)?
        && verify_identity_eq8(&g, &h, 1)?
        && !verify_identity_eq8(&map(&[0, 0, 1], &[1]), &map(&[1, 1], &[1]), 1)?;
    Ok(expect(ok, "true, true, false", "unexpected truth values"))
}

fn common_fixed() -> Outcome {
    let (g, h) = twisted_pair();
    let c = common_fixed_points(&g, &h)?;
    Ok(expect(
        c.count() <= 2,
        format!("{} common fixed points", c.count()),
        format!("{} common fixed points", c.count()),
    ))
}

fn orbit_explorer() -> Outcome {
    let ex = orbit(&[sigma()], &ProjPoint::finite(1), 10_000);
    if ex.status != OrbitStatus::Closed || ex.points.len() != 3 {
        return Ok(Err(format!("rotation orbit has {} points", ex.points.len())));
    }
    if action_table(&[sigma()], &ex.points)?[0].cycle_type() != Some(vec![3]) {
        return Ok(Err("rotation does not act as a 3-cycle".into()));
    }
    let ex = orbit(&[map(&[0, 0, 1], &[1]), map(&[1, 1], &[1])], &ProjPoint::finite(0), 10_000);
    Ok(expect(
        ex.status == OrbitStatus::BudgetExceeded,
        "3-cycle; (z², z+1) orbit of 0 exceeds budget",
        "(z², z+1) orbit of 0 closed",
    ))
}

/// Runs every check; failures and errors are reported, never propagated.
pub fn run_golden_suite(cfg: &GoldenConfig) -> Vec<GoldenCheck> {
    let checks: Vec<NamedCheck<'_>> = vec![
        ("factor-composition", Box::new(factor_composition)),
        ("twisted-common-iterate", Box::new(twisted_common_iterate)),
        ("rotation-iterates", Box::new(rotation_iterates)),
        ("chebyshev-laws", Box::new(|| chebyshev_laws(cfg))),
        ("periodic-counts", Box::new(|| periodic_counts(cfg))),
        ("multiplier-identity", Box::new(multiplier_identity)),
        ("ritt-invariants", Box::new(ritt_invariants)),
        ("orbit-size-bound", Box::new(|| orbit_size_bound(cfg))),
        ("orbit-size-growth", Box::new(|| orbit_size_growth(cfg))),
        ("exponent-probes", Box::new(|| exponent_probes(cfg))),
        ("commutator-identity", Box::new(commutator_identity)),
        ("common-fixed-points", Box::new(common_fixed)),
        ("orbit-explorer", Box::new(orbit_explorer)),
    ];
    checks
        .into_iter()
        .map(|(name, run)| {
            let t0 = Instant::now();
            let (passed, detail) = match run() {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(e) => (false, format!("error: {e}")),
            };
            GoldenCheck {
                name,
                passed,
                detail,
                seconds: t0.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn broken_chebyshev(d: u32) -> RationalMap {
        // correct T₁ and T₂, then T_{d+1} = z·T_d + T_{d−1}
        if d == 1 {
            return RationalMap::identity();
        }
        let mut prev = Polynomial::x();
        let mut cur = Polynomial::from_ints(&[-2, 0, 1]);
        for _ in 2..d {
            let next = &cur.shift(1) + &prev;
            prev = cur;
            cur = next;
        }
        RationalMap::from_poly(cur).unwrap()
    }

    #[test]
    fn tampered_recursion_fails() {
        let cfg = GoldenConfig {
            chebyshev: broken_chebyshev,
            ..GoldenConfig::default()
        };
        let out = chebyshev_laws(&cfg).unwrap();
        assert!(out.unwrap_err().starts_with("T₃"));
        assert!(chebyshev_laws(&GoldenConfig::default()).unwrap().is_ok());
    }
}
