//! Correspondences c = b∘a⁻¹, their graph curves in (x, w), composition by
//! elimination, orbit closures and generic orbit sizes.
//!
//! Curves are stored without multiplicity: every operation ends with a
//! squarefree, content-free, normalized polynomial.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{chordal, complex_coeffs, poly_roots, SpherePoint};
use crate::poly::{resultant_eliminate, BiPoly, Polynomial};
use crate::ratmap::RationalMap;
use crate::ritt::{common_iterate_equal_degree, ritt_sequence, RittSequence};

pub const DEFAULT_K_MAX: usize = 64;
pub const DEFAULT_GRAPH_DEGREE_CAP: usize = 400;

/// z ↦ b(a⁻¹(z)).
#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence {
    pub a: RationalMap,
    pub b: RationalMap,
}

impl Correspondence {
    pub fn new(a: RationalMap, b: RationalMap) -> Self {
        Correspondence { a, b }
    }

    pub fn identity() -> Self {
        Self::new(RationalMap::identity(), RationalMap::identity())
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.b.clone(), self.a.clone())
    }
}

/// Curve P(x, w) = 0 with x the source and w the target coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphCurve {
    poly: BiPoly,
}

impl GraphCurve {
    /// Cleans an arbitrary nonzero polynomial into graph form.
    pub fn new(poly: &BiPoly) -> Result<Self> {
        Ok(GraphCurve {
            poly: poly.without_contents().squarefree_part()?,
        })
    }

    pub fn diagonal() -> Self {
        GraphCurve {
            poly: BiPoly::from_terms(&[(0, 1, 1.into()), (1, 0, (-1).into())]),
        }
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    /// (number of targets over a generic source, number of sources over a
    /// generic target) = (deg_w, deg_x).
    pub fn bidegree(&self) -> (usize, usize) {
        (self.poly.deg_second(), self.poly.deg_first())
    }

    /// The graph of the inverse correspondence.
    pub fn transpose(&self) -> Self {
        GraphCurve {
            poly: self.poly.transpose().normalized(),
        }
    }

    /// Union without multiplicity: A·(B / gcd(A, B)).
    pub fn union(&self, o: &Self) -> Self {
        let g = self.poly.gcd(&o.poly);
        let extra = o.poly.exact_div(&g).expect("gcd divides");
        GraphCurve {
            poly: (&self.poly * &extra).normalized(),
        }
    }

    /// Whether every component of `o` is a component of self.
    pub fn contains(&self, o: &Self) -> bool {
        self.poly.gcd(&o.poly) == o.poly
    }

    pub fn fmt_vars(&self, first: &str, second: &str) -> String {
        self.poly.fmt_vars(first, second)
    }
}

impl std::fmt::Display for GraphCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Implicitization of {(a(t), b(t))}: Res_t(a_num(t) − x·a_den(t), b_num(t) − w·b_den(t)).
pub fn graph(c: &Correspondence) -> Result<GraphCurve> {
    let (an, ad) = (c.a.num(), c.a.den());
    // first variable x, second t
    let p = BiPoly::new(
        (0..=c.a.degree())
            .map(|j| Polynomial::new(vec![an.coeff(j), -&ad.coeff(j)]))
            .collect(),
    );
    // first variable t, second w
    let q = BiPoly::new(vec![c.b.num().clone(), -c.b.den()]);
    Ok(GraphCurve {
        poly: resultant_eliminate(&p, &q)?,
    })
}

/// g1∘g2: first follow g2, then g1.
pub fn compose_graphs(g1: &GraphCurve, g2: &GraphCurve) -> Result<GraphCurve> {
    Ok(GraphCurve {
        poly: resultant_eliminate(&g2.poly, &g1.poly)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitClosure {
    pub curve: GraphCurve,
    pub s_c: usize,
    /// k at which the cumulative union stopped growing.
    pub stabilized_at: usize,
}

/// Cumulative unions of Γ⁰ = diagonal, Γ¹ = graph(c), Γ^{k+1} = Γ^k∘Γ until
/// two consecutive unions agree as polynomials.
pub fn orbit_closure(c: &Correspondence, k_max: usize) -> Result<OrbitClosure> {
    orbit_closure_capped(c, k_max, DEFAULT_GRAPH_DEGREE_CAP)
}

pub fn orbit_closure_capped(c: &Correspondence, k_max: usize, degree_cap: usize) -> Result<OrbitClosure> {
    if k_max == 0 {
        return Err(Error::Precondition("k_max must be at least 1".into()));
    }
    let gamma = graph(c)?;
    let mut power = gamma.clone();
    let mut union = GraphCurve::diagonal();
    for k in 1..=k_max {
        let (s, t) = power.bidegree();
        if s.max(t) > degree_cap {
            return Err(Error::DegreeCap {
                degree: s.max(t) as u64,
                cap: degree_cap as u64,
            });
        }
        if union.contains(&power) {
            let s_c = union.bidegree().0;
            return Ok(OrbitClosure {
                curve: union,
                s_c,
                stabilized_at: k,
            });
        }
        union = union.union(&power);
        if k < k_max {
            power = compose_graphs(&power, &gamma)?;
        }
    }
    Err(Error::NotStabilized(k_max))
}

fn preimages(a: &RationalMap, y: SpherePoint) -> Result<Vec<SpherePoint>> {
    let (n, d) = (complex_coeffs(a.num()), complex_coeffs(a.den()));
    let deg = a.degree();
    let mut poly: Vec<Complex64> = match y {
        None => d,
        Some(y) => (0..=deg)
            .map(|i| {
                let ni = n.get(i).copied().unwrap_or_default();
                let di = d.get(i).copied().unwrap_or_default();
                ni - y * di
            })
            .collect(),
    };
    poly.resize(deg + 1, Complex64::default());
    let scale = poly.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut out = Vec::new();
    while poly.last().is_some_and(|c| c.norm() <= 1e-12 * scale) {
        poly.pop();
        out.push(None);
    }
    out.extend(poly_roots(&poly)?.into_iter().map(Some));
    Ok(out)
}

fn image(b: &RationalMap, x: SpherePoint) -> SpherePoint {
    match x {
        None => {
            let (dn, dd) = (b.num().deg(), b.den().deg());
            match dn.cmp(&dd) {
                std::cmp::Ordering::Greater => None,
                std::cmp::Ordering::Less => Some(Complex64::default()),
                std::cmp::Ordering::Equal => Some(b.num().lead_or_zero().to_complex() / b.den().lead_or_zero().to_complex()),
            }
        }
        Some(x) => {
            let n = crate::numeric::horner(&complex_coeffs(b.num()), x).0;
            let d = crate::numeric::horner(&complex_coeffs(b.den()), x).0;
            let v = n / d;
            v.is_finite().then_some(v)
        }
    }
}

/// Numeric forward orbit of z0 under c, deduplicated in the chordal metric.
pub fn point_orbit(c: &Correspondence, z0: SpherePoint, budget: usize, tol: f64) -> Result<Vec<SpherePoint>> {
    let mut orbit = vec![z0];
    let mut frontier = vec![z0];
    while let Some(y) = frontier.pop() {
        for x in preimages(&c.a, y)? {
            let w = image(&c.b, x);
            if orbit.iter().all(|p| chordal(*p, w) > tol) {
                if orbit.len() == budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                orbit.push(w);
                frontier.push(w);
            }
        }
    }
    Ok(orbit)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma4Report {
    pub p: u32,
    pub d: usize,
    pub s_c: usize,
    pub bound: u64,
    pub bound_ok: bool,
}

/// Generic orbit size of the first Ritt-step correspondence against p·d^p.
pub fn verify_lemma4(f: &RationalMap, g: &RationalMap, k_max: usize) -> Result<Lemma4Report> {
    let p = common_iterate_equal_degree(f, g, crate::ritt::DEFAULT_MAX_STEPS, crate::ritt::DEFAULT_MAX_ORDER)?;
    let seq = ritt_sequence(f, g, crate::ritt::DEFAULT_MAX_STEPS)?;
    let first = &seq.steps[0];
    let closure = orbit_closure(&Correspondence::new(first.a.clone(), first.b.clone()), k_max)?;
    let d = f.degree();
    let bound = (p as u64) * (d as u64).pow(p);
    Ok(Lemma4Report {
        p,
        d,
        s_c: closure.s_c,
        bound,
        bound_ok: (closure.s_c as u64) <= bound,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma5Entry {
    pub n: usize,
    pub r: usize,
    pub s_n: usize,
    pub s_next: usize,
    pub holds: bool,
}

/// s_{c_{n+1}} ≥ r·s_{c_n} on every consecutive pair with deg a_n = deg a_{n+1} = r.
pub fn verify_lemma5(seq: &RittSequence, k_max: usize) -> Result<Vec<Lemma5Entry>> {
    let sizes: Vec<usize> = seq
        .steps
        .iter()
        .map(|s| orbit_closure(&Correspondence::new(s.a.clone(), s.b.clone()), k_max).map(|c| c.s_c))
        .collect::<Result<_>>()?;
    Ok(seq
        .steps
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].r == w[1].r)
        .map(|(n, w)| {
            let r = w[0].r;
            Lemma5Entry {
                n,
                r,
                s_n: sizes[n],
                s_next: sizes[n + 1],
                holds: sizes[n + 1] >= r * sizes[n],
            }
        })
        .collect())
}
