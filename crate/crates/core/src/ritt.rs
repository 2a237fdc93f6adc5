//! Lüroth normalization of commuting pairs, Ritt sequences and common iterates.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::mobius::{mobius_order, post_compose, Mobius};
use crate::poly::{nullspace, BiPoly, Polynomial};
use crate::ratmap::{commutes, compose, iterate_capped, ProjPoint, RatFunc, RationalMap, DEFAULT_DEGREE_CAP};

pub const DEFAULT_MAX_STEPS: usize = 32;
pub const DEFAULT_MAX_ORDER: u32 = 120;

#[derive(Debug, Clone, PartialEq)]
pub struct RittStep {
    pub a: RationalMap,
    pub b: RationalMap,
    pub u: RationalMap,
    pub f_step: RationalMap,
    pub g_step: RationalMap,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RittSequence {
    pub steps: Vec<RittStep>,
    pub terminated: bool,
    pub consumed_budget: usize,
}

impl RittSequence {
    pub fn degrees(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.r).collect()
    }
}

/// Exponents with f^{f_exponent} = g^{g_exponent}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommonIterate {
    pub f_exponent: u32,
    pub g_exponent: u32,
}

/// num(y)·den(z) − num(z)·den(y), first variable z, second y.
fn fiber_curve(f: &RationalMap) -> BiPoly {
    let (n, d) = (f.num(), f.den());
    let rows = (0..=f.degree())
        .map(|j| &d.scale(&n.coeff(j)) - &n.scale(&d.coeff(j)))
        .collect();
    BiPoly::new(rows)
}

/// Greatest common factor of the two fiber curves, free of z-content and
/// normalized; its y-degree is the degree of the Lüroth generator.
pub fn fiber_gcd(f: &RationalMap, g: &RationalMap) -> Result<BiPoly> {
    if !commutes(f, g) {
        return Err(Error::NonCommuting);
    }
    Ok(fiber_gcd_unchecked(f, g))
}

fn fiber_gcd_unchecked(f: &RationalMap, g: &RationalMap) -> BiPoly {
    fiber_curve(f).gcd(&fiber_curve(g)).without_contents().normalized()
}

const PROBES: [i64; 12] = [0, 1, 2, -1, 3, -2, 4, -3, 5, -4, 6, -5];

/// Post-composes a Möbius so that the first three probe points with distinct
/// images (0, 1, ∞, 2, −1, 3, …) land on 0, 1, ∞.
fn normalize_generator(theta: &RationalMap) -> Result<RationalMap> {
    let mut probes = vec![ProjPoint::finite(0), ProjPoint::finite(1), ProjPoint::Infinity];
    probes.extend(PROBES[2..].iter().map(|&v| ProjPoint::finite(v)));
    let mut images: Vec<ProjPoint> = Vec::with_capacity(3);
    for p in &probes {
        let img = theta.eval_point(p);
        if !images.contains(&img) {
            images.push(img);
            if images.len() == 3 {
                break;
            }
        }
    }
    if images.len() < 3 {
        return Err(Error::Internal("generator takes fewer than three probe values".into()));
    }
    let m = Mobius::to_zero_one_infinity(&images[0], &images[1], &images[2])?;
    Ok(post_compose(&m, theta))
}

/// (u, a, b) with f = a∘u, g = b∘u and u generating the field C(f, g).
pub fn luroth_generator(f: &RationalMap, g: &RationalMap) -> Result<(RationalMap, RationalMap, RationalMap)> {
    if !commutes(f, g) {
        return Err(Error::NonCommuting);
    }
    luroth_unchecked(f, g)
}

fn luroth_unchecked(f: &RationalMap, g: &RationalMap) -> Result<(RationalMap, RationalMap, RationalMap)> {
    let h = fiber_gcd_unchecked(f, g);
    let top = h.lead_second();
    let theta = h
        .rows()
        .iter()
        .filter_map(|row| RatFunc::new(row.clone(), top.clone()).ok())
        .filter(|c| !c.is_constant())
        .min_by_key(|c| c.degree())
        .ok_or_else(|| Error::Internal("fiber gcd has no nonconstant coefficient".into()))?;
    let theta = RationalMap::from_ratfunc(theta)?;
    if theta.degree() != h.deg_second() {
        return Err(Error::Internal(format!(
            "generator degree {} differs from fiber degree {}",
            theta.degree(),
            h.deg_second()
        )));
    }
    let u = normalize_generator(&theta)?;
    let a = left_factor(f, &u)?;
    let b = left_factor(g, &u)?;
    Ok((u, a, b))
}

/// The outer factor a with f = a∘u, by a linear solve on a's coefficients.
pub fn left_factor(f: &RationalMap, u: &RationalMap) -> Result<RationalMap> {
    let (df, du) = (f.degree(), u.degree());
    if df % du != 0 {
        return Err(Error::NoFactor);
    }
    let r = df / du;
    let (p, q) = (u.num(), u.den());
    let mut ppow = vec![Polynomial::one()];
    let mut qpow = vec![Polynomial::one()];
    for i in 1..=r {
        ppow.push(&ppow[i - 1] * p);
        qpow.push(&qpow[i - 1] * q);
    }
    // A(P/Q)·Q^r·den(f) − B(P/Q)·Q^r·num(f) = 0, linear in the coefficients of A and B
    let mut columns: Vec<Polynomial> = Vec::with_capacity(2 * (r + 1));
    let basis: Vec<Polynomial> = (0..=r).map(|i| &ppow[i] * &qpow[r - i]).collect();
    columns.extend(basis.iter().map(|t| t * f.den()));
    columns.extend(basis.iter().map(|t| -&(t * f.num())));
    let rows = columns.iter().map(|c| c.len()).max().unwrap_or(0);
    let matrix: Vec<Vec<FieldElement>> = (0..rows)
        .map(|k| columns.iter().map(|c| c.coeff(k)).collect())
        .collect();
    let kernel = nullspace(&matrix, columns.len())?;
    let v = kernel.into_iter().next().ok_or(Error::NoFactor)?;
    let num = Polynomial::new(v[..=r].to_vec());
    let den = Polynomial::new(v[r + 1..].to_vec());
    let a = RationalMap::new(num, den).map_err(|_| Error::NoFactor)?;
    if compose(&a, u) != *f {
        return Err(Error::NoFactor);
    }
    Ok(a)
}

fn check_pair(f: &RationalMap, g: &RationalMap) -> Result<()> {
    if f.degree() != g.degree() {
        return Err(Error::UnequalDegree(f.degree(), g.degree()));
    }
    if f.degree() < 2 {
        return Err(Error::Precondition("Ritt sequences need degree ≥ 2".into()));
    }
    if !commutes(f, g) {
        return Err(Error::NonCommuting);
    }
    Ok(())
}

/// (f₀, g₀) = (f, g), (f_{n+1}, g_{n+1}) = (u_n a_n, u_n b_n), until deg a_n = 1
/// or the step budget runs out.  a∘u∘b = b∘u∘a and a_n∘b_{n+1} = b_n∘a_{n+1}
/// are checked as steps are produced.
pub fn ritt_sequence(f: &RationalMap, g: &RationalMap, max_steps: usize) -> Result<RittSequence> {
    check_pair(f, g)?;
    let mut steps: Vec<RittStep> = Vec::new();
    let (mut fn_, mut gn) = (f.clone(), g.clone());
    for _ in 0..max_steps {
        let r = advance(&mut steps, &fn_, &gn)?;
        if r == 1 {
            let consumed = steps.len();
            return Ok(RittSequence {
                steps,
                terminated: true,
                consumed_budget: consumed,
            });
        }
        let last = steps.last().expect("just pushed");
        fn_ = compose(&last.u, &last.a);
        gn = compose(&last.u, &last.b);
        if fn_.degree() != f.degree() || !commutes(&fn_, &gn) {
            return Err(Error::VerificationMismatch("next pair is not a commuting pair".into()));
        }
    }
    Ok(RittSequence {
        steps,
        terminated: false,
        consumed_budget: max_steps,
    })
}

/// Continues a sequence past its first r = 1 step, so that the constant
/// tail can be inspected.
pub fn extend_tail(seq: &mut RittSequence, extra: usize) -> Result<()> {
    for _ in 0..extra {
        let last = seq.steps.last().ok_or_else(|| Error::Precondition("empty sequence".into()))?;
        let (fn_, gn) = (compose(&last.u, &last.a), compose(&last.u, &last.b));
        advance(&mut seq.steps, &fn_, &gn)?;
        seq.consumed_budget += 1;
    }
    Ok(())
}

/// Normalizes (f_n, g_n), checks both step relations, appends the step and
/// returns its r.
fn advance(steps: &mut Vec<RittStep>, fn_: &RationalMap, gn: &RationalMap) -> Result<usize> {
    let (u, a, b) = luroth_unchecked(fn_, gn)?;
    let step = RittStep {
        r: a.degree(),
        a,
        b,
        u,
        f_step: fn_.clone(),
        g_step: gn.clone(),
    };
    verify_step(&step)?;
    if let Some(prev) = steps.last() {
        if compose(&prev.a, &step.b) != compose(&prev.b, &step.a) {
            return Err(Error::VerificationMismatch(format!(
                "consecutive relation fails at step {}",
                steps.len()
            )));
        }
        if step.r > prev.r {
            return Err(Error::VerificationMismatch("degree sequence increased".into()));
        }
    }
    let r = step.r;
    steps.push(step);
    Ok(r)
}

/// Factorization identities and a∘u∘b = b∘u∘a for one step.
pub fn verify_step(s: &RittStep) -> Result<()> {
    if compose(&s.a, &s.u) != s.f_step || compose(&s.b, &s.u) != s.g_step {
        return Err(Error::VerificationMismatch("step factorization fails".into()));
    }
    if compose(&s.a, &compose(&s.u, &s.b)) != compose(&s.b, &compose(&s.u, &s.a)) {
        return Err(Error::VerificationMismatch("aub = bua fails".into()));
    }
    if s.f_step.degree() == s.g_step.degree() && s.a.degree() != s.b.degree() {
        return Err(Error::VerificationMismatch("deg a ≠ deg b".into()));
    }
    Ok(())
}

/// Smallest p with f^p = g^p read off the terminal Möbius a_n∘b_n⁻¹, verified exactly.
pub fn common_iterate_equal_degree(
    f: &RationalMap,
    g: &RationalMap,
    max_steps: usize,
    max_order: u32,
) -> Result<u32> {
    let seq = ritt_sequence(f, g, max_steps)?;
    if !seq.terminated {
        return Err(Error::BudgetExhausted(max_steps));
    }
    let last = seq.steps.last().expect("terminated sequence has a step");
    let (a, b) = (
        last.a.to_mobius().expect("degree-1 factor"),
        last.b.to_mobius().expect("degree-1 factor"),
    );
    let sigma = a.compose(&b.inverse());
    let p = mobius_order(&sigma, max_order).ok_or(Error::OrderNotFound(max_order))?;
    let cap = (f.degree() as u64).saturating_pow(p).max(DEFAULT_DEGREE_CAP);
    if iterate_capped(f, p, cap)? != iterate_capped(g, p, cap)? {
        return Err(Error::VerificationMismatch(format!("f^{p} ≠ g^{p}")));
    }
    Ok(p)
}

/// Smallest (n, m) with deg(f)^n = deg(g)^m ≤ cap.
pub fn degree_match(df: usize, dg: usize, cap: u64) -> Option<(u32, u32)> {
    let (df, dg) = (df as u64, dg as u64);
    let mut best = None;
    let mut fp = df;
    let mut n = 1u32;
    while fp <= cap {
        let mut gp = dg;
        let mut m = 1u32;
        while gp < fp {
            gp = gp.saturating_mul(dg);
            m += 1;
        }
        if gp == fp {
            best = Some((n, m));
            break;
        }
        fp = fp.saturating_mul(df);
        n += 1;
    }
    best
}

/// Exponents with f^n = g^m for a pair whose equal-degree iterates commute.
pub fn common_iterate_general(
    f: &RationalMap,
    g: &RationalMap,
    degree_cap: u64,
    max_steps: usize,
    max_order: u32,
) -> Result<CommonIterate> {
    if f.degree() < 2 || g.degree() < 2 {
        return Err(Error::Precondition("common iterates need degrees ≥ 2".into()));
    }
    let (n, m) = degree_match(f.degree(), g.degree(), degree_cap).ok_or(Error::NoDegreeMatch)?;
    let fi = iterate_capped(f, n, degree_cap)?;
    let gi = iterate_capped(g, m, degree_cap)?;
    let p = common_iterate_equal_degree(&fi, &gi, max_steps, max_order)?;
    Ok(CommonIterate {
        f_exponent: n * p,
        g_exponent: m * p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{composite_uv, twisted_pair, factor_u, factor_v, synthetic_pairs};
    use crate::chebylattes::chebyshev;

    fn map(n: &[i64], d: &[i64]) -> RationalMap {
        RationalMap::from_ints(n, d).unwrap()
    }

    #[test]
    fn fiber_of_equal_squares() {
        let z2 = map(&[0, 0, 1], &[1]);
        let h = fiber_gcd(&z2, &z2).unwrap();
        assert_eq!(h.deg_second(), 2);
        assert_eq!(h, BiPoly::from_terms(&[(0, 2, 1.into()), (2, 0, (-1).into())]));
    }

    #[test]
    fn fiber_of_chebyshev_pair() {
        let h = fiber_gcd(&chebyshev(2, 1), &chebyshev(3, 1)).unwrap();
        assert_eq!(h.deg_second(), 1);
        // independent check: the pair separates sample points
        let mut seen = Vec::new();
        for z in -6..=6i64 {
            let (a, b) = (chebyshev(2, 1), chebyshev(3, 1));
            let p = ProjPoint::finite(z);
            let img = (a.eval_point(&p), b.eval_point(&p));
            assert!(!seen.contains(&img));
            seen.push(img);
        }
    }

    #[test]
    fn non_commuting_rejected() {
        let a = map(&[0, 0, 1], &[1]);
        let b = map(&[1, 0, 1], &[1]);
        assert_eq!(fiber_gcd(&a, &b), Err(Error::NonCommuting));
    }

    #[test]
    fn luroth_examples() {
        let z2 = map(&[0, 0, 1], &[1]);
        let (u, a, b) = luroth_generator(&z2, &z2).unwrap();
        assert_eq!(u, z2);
        assert!(a.is_identity() && b.is_identity());

        let (t2, t3) = (chebyshev(2, 1), chebyshev(3, 1));
        let (u, a, b) = luroth_generator(&t2, &t3).unwrap();
        assert_eq!(u.degree(), 1);
        assert_eq!(compose(&a, &u), t2);
        assert_eq!(compose(&b, &u), t3);

        let (g, h) = twisted_pair();
        assert_eq!(fiber_gcd(&g, &h).unwrap().deg_second(), 2);
        let (u, a, b) = luroth_generator(&g, &h).unwrap();
        assert_eq!(u.degree(), 2);
        assert_eq!(compose(&a, &u), g);
        assert_eq!(compose(&b, &u), h);
    }

    #[test]
    fn generator_normalization() {
        let (g, h) = twisted_pair();
        let (u, _, _) = luroth_generator(&g, &h).unwrap();
        let mut probes = vec![ProjPoint::finite(0), ProjPoint::finite(1), ProjPoint::Infinity];
        probes.extend(PROBES[2..].iter().map(|&v| ProjPoint::finite(v)));
        let mut images: Vec<ProjPoint> = Vec::new();
        for p in &probes {
            let img = u.eval_point(p);
            if !images.contains(&img) {
                images.push(img);
            }
        }
        assert_eq!(images[..3], [ProjPoint::finite(0), ProjPoint::finite(1), ProjPoint::Infinity]);
    }

    #[test]
    fn left_factor_examples() {
        let z4 = map(&[0, 0, 0, 0, 1], &[1]);
        let z2 = map(&[0, 0, 1], &[1]);
        assert_eq!(left_factor(&z4, &z2).unwrap(), z2);
        assert_eq!(left_factor(&composite_uv(), &factor_v()).unwrap(), factor_u());
        let z3 = map(&[0, 0, 0, 1], &[1]);
        assert_eq!(left_factor(&z3, &z2), Err(Error::NoFactor));
        // right degree, wrong factor
        assert_eq!(left_factor(&z4, &map(&[1, 0, 1], &[0, 1])), Err(Error::NoFactor));
    }

    #[test]
    fn equal_pair_terminates_immediately() {
        let f = composite_uv();
        let seq = ritt_sequence(&f, &f, DEFAULT_MAX_STEPS).unwrap();
        assert!(seq.terminated);
        assert_eq!(seq.degrees(), vec![1]);
        assert_eq!(common_iterate_equal_degree(&f, &f, 32, 120).unwrap(), 1);
    }

    #[test]
    fn twisted_pair_common_iterate() {
        let (g, h) = twisted_pair();
        let seq = ritt_sequence(&g, &h, DEFAULT_MAX_STEPS).unwrap();
        assert!(seq.terminated);
        assert_eq!(common_iterate_equal_degree(&g, &h, 32, 120).unwrap(), 3);
    }

    #[test]
    fn synthetic_common_iterates() {
        for (name, f, g, p) in synthetic_pairs() {
            assert_eq!(common_iterate_equal_degree(&f, &g, 32, 120).unwrap(), p, "{name}");
        }
    }

    #[test]
    fn unequal_degrees_rejected() {
        let z2 = map(&[0, 0, 1], &[1]);
        let z4 = map(&[0, 0, 0, 0, 1], &[1]);
        assert_eq!(ritt_sequence(&z2, &z4, 4), Err(Error::UnequalDegree(2, 4)));
    }

    #[test]
    fn degree_matching() {
        assert_eq!(degree_match(4, 2, 5000), Some((1, 2)));
        assert_eq!(degree_match(4, 16, 5000), Some((2, 1)));
        assert_eq!(degree_match(2, 3, 5000), None);
        assert_eq!(degree_match(8, 4, 5000), Some((2, 3)));
    }

    #[test]
    fn general_wrapper_on_equal_maps() {
        let f = composite_uv();
        let r = common_iterate_general(&f, &f, 5000, 32, 120).unwrap();
        assert_eq!((r.f_exponent, r.g_exponent), (1, 1));
    }

    #[test]
    fn general_wrapper_on_twisted_pair_square() {
        let (g, h) = twisted_pair();
        let h2 = compose(&h, &h);
        let r = common_iterate_general(&g, &h2, 5000, 32, 120).unwrap();
        assert_eq!((r.f_exponent, r.g_exponent), (6, 3));
    }
}
