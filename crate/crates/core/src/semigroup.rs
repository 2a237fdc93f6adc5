//! Exact orbits of finitely generated semigroups of maps, their actions on
//! finite orbits, the degree/action classifier and the g^N(g^N h^N)^N
//! identity.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::{eval_sphere, spherical_derivative_norm};
use crate::periodic::logarithmic_degree;
use crate::ratmap::{compose, iterate_capped, ProjPoint, RationalMap, DEFAULT_DEGREE_CAP};

pub const DEFAULT_ORBIT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitStatus {
    Closed,
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct OrbitExploration {
    pub generators: Vec<RationalMap>,
    pub start: ProjPoint,
    /// Points in discovery order; `points[0]` is the start.
    pub points: Vec<ProjPoint>,
    /// Indices of discovered points whose images were not yet computed.
    pub frontier: VecDeque<usize>,
    pub budget: usize,
    pub status: OrbitStatus,
}

/// Canonical hash key: points lifted to one conductor have a unique
/// power-basis representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum PointKey {
    Finite(Vec<BigInt>, BigInt),
    Infinity,
}

fn key(p: &ProjPoint, k: u32) -> PointKey {
    match p {
        ProjPoint::Infinity => PointKey::Infinity,
        ProjPoint::Finite(v) => {
            let v = if v.is_rational() { v.clone() } else { v.lift(k).expect("conductor divides k") };
            PointKey::Finite(v.residue().to_vec(), v.denominator().clone())
        }
    }
}

fn common_conductor(generators: &[RationalMap], points: &[ProjPoint]) -> u32 {
    let k = generators.iter().fold(1, |k, g| num_integer::lcm(k, g.conductor()));
    points.iter().fold(k, |k, p| match p {
        ProjPoint::Finite(v) => num_integer::lcm(k, v.conductor()),
        ProjPoint::Infinity => k,
    })
}

/// Breadth-first closure of `start` under the generators, stopping once more
/// than `budget` points have been found.
pub fn orbit(generators: &[RationalMap], start: &ProjPoint, budget: usize) -> OrbitExploration {
    let k = common_conductor(generators, std::slice::from_ref(start));
    let mut index: HashMap<PointKey, usize> = HashMap::new();
    index.insert(key(start, k), 0);
    let mut ex = OrbitExploration {
        generators: generators.to_vec(),
        start: start.clone(),
        points: vec![start.clone()],
        frontier: VecDeque::from([0]),
        budget,
        status: OrbitStatus::Closed,
    };
    while let Some(&i) = ex.frontier.front() {
        let images: Vec<ProjPoint> = generators.iter().map(|g| g.eval_point(&ex.points[i])).collect();
        for image in images {
            let id = key(&image, k);
            if index.contains_key(&id) {
                continue;
            }
            if ex.points.len() >= budget {
                ex.status = OrbitStatus::BudgetExceeded;
                return ex;
            }
            index.insert(id, ex.points.len());
            ex.frontier.push_back(ex.points.len());
            ex.points.push(image);
        }
        ex.frontier.pop_front();
    }
    ex
}

/// A map of a finite point set to itself, as image indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Action {
    pub images: Vec<usize>,
    pub bijective: bool,
}

impl Action {
    pub fn identity(n: usize) -> Self {
        Action {
            images: (0..n).collect(),
            bijective: true,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// self∘other: apply `other` first.
    pub fn after(&self, other: &Action) -> Action {
        let images: Vec<usize> = other.images.iter().map(|&j| self.images[j]).collect();
        Action {
            bijective: self.bijective && other.bijective,
            images,
        }
    }

    /// Sorted cycle lengths of a permutation; `None` for non-bijections.
    pub fn cycle_type(&self) -> Option<Vec<usize>> {
        if !self.bijective {
            return None;
        }
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for s in 0..self.images.len() {
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out.sort_unstable();
        Some(out)
    }
}

fn induced(g: &RationalMap, points: &[ProjPoint], index: &HashMap<PointKey, usize>, k: u32) -> Result<Action> {
    let images = points
        .iter()
        .map(|p| index.get(&key(&g.eval_point(p), k)).copied().ok_or(Error::NotInvariant))
        .collect::<Result<Vec<usize>>>()?;
    let mut hit = vec![false; points.len()];
    for &j in &images {
        hit[j] = true;
    }
    Ok(Action {
        bijective: hit.iter().all(|&h| h),
        images,
    })
}

fn point_index(points: &[ProjPoint], k: u32) -> HashMap<PointKey, usize> {
    points.iter().enumerate().map(|(i, p)| (key(p, k), i)).collect()
}

/// The self-map each generator induces on `points`.
pub fn action_table(generators: &[RationalMap], points: &[ProjPoint]) -> Result<Vec<Action>> {
    let k = common_conductor(generators, points);
    let index = point_index(points, k);
    generators.iter().map(|g| induced(g, points, &index, k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// (ℓ(g) mod ℓ(F), g restricted to the orbit).
    Defined { residue: u32, action: Action },
    /// deg g is not a power of the base degree.
    Undefined,
}

/// Logarithmic degree of g against the base of `reference`; automorphisms
/// have ℓ = 0.
fn ell(reference: u64, degree: u64) -> Result<Option<u32>> {
    if degree == 1 {
        return Ok(Some(0));
    }
    match logarithmic_degree(reference, degree) {
        Ok((_, l)) => Ok(Some(l)),
        Err(Error::NotAPower { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// g ↦ (ℓ(g) mod ℓ(F), g|_O), where F must restrict to the identity on O.
pub fn classifier_phi(g: &RationalMap, big_f: &RationalMap, points: &[ProjPoint]) -> Result<Classification> {
    let fixes = action_table(std::slice::from_ref(big_f), points).is_ok_and(|t| t[0].is_identity());
    if !fixes {
        return Err(Error::Precondition("F does not fix the orbit pointwise".into()));
    }
    let action = action_table(std::slice::from_ref(g), points)?.remove(0);
    let reference = big_f.degree() as u64;
    let ell_f = ell(reference, reference)?.expect("F is a power of its own base");
    if ell_f == 0 {
        return Err(Error::Precondition("F must have degree at least 2".into()));
    }
    Ok(match ell(reference, g.degree() as u64)? {
        Some(l) => Classification::Defined {
            residue: l % ell_f,
            action,
        },
        None => Classification::Undefined,
    })
}

/// Julia-proximity heuristic: the mean of log‖f′‖ along `steps` forward
/// images of each point.  Positive values mark expanding orbits, as on
/// repelling cycles in the Julia set; −∞ marks orbits through critical points.
pub fn julia_proximity(f: &RationalMap, points: &[ProjPoint], steps: usize) -> Vec<f64> {
    points
        .iter()
        .map(|p| {
            let mut z = match p {
                ProjPoint::Infinity => None,
                ProjPoint::Finite(v) => Some(v.to_complex()),
            };
            let mut total = 0.0;
            for _ in 0..steps.max(1) {
                total += spherical_derivative_norm(f, z).ln();
                z = eval_sphere(f, z);
            }
            total / steps.max(1) as f64
        })
        .collect()
}

/// Exact check of g^N∘(g^N∘h^N)^N = (g^N∘h^N)^N∘g^N.
pub fn verify_identity_eq8(g: &RationalMap, h: &RationalMap, n: u32) -> Result<bool> {
    verify_identity_eq8_capped(g, h, n, DEFAULT_DEGREE_CAP)
}

pub fn verify_identity_eq8_capped(g: &RationalMap, h: &RationalMap, n: u32, cap: u64) -> Result<bool> {
    let gn = iterate_capped(g, n, cap)?;
    let hn = iterate_capped(h, n, cap)?;
    let inner = (gn.degree() as u64).saturating_mul(hn.degree() as u64);
    let total = inner.saturating_pow(n).saturating_mul(gn.degree() as u64);
    if total > cap {
        return Err(Error::DegreeCap { degree: total, cap });
    }
    let kn = iterate_capped(&compose(&gn, &hn), n, cap)?;
    Ok(compose(&gn, &kn) == compose(&kn, &gn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sigma, twisted_pair};
    use crate::chebylattes::chebyshev;
    use crate::field::FieldElement;
    use crate::ratmap::iterate;

    fn map(n: &[i64], d: &[i64]) -> RationalMap {
        RationalMap::from_ints(n, d).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let z2 = map(&[0, 0, 1], &[1]);
        let ex = orbit(std::slice::from_ref(&z2), &ProjPoint::finite(1), DEFAULT_ORBIT_BUDGET);
        assert_eq!((ex.points.len(), ex.status), (1, OrbitStatus::Closed));

        let ex = orbit(&[sigma()], &ProjPoint::finite(1), DEFAULT_ORBIT_BUDGET);
        assert_eq!(ex.status, OrbitStatus::Closed);
        let z3 = FieldElement::zeta(3).unwrap();
        assert_eq!(
            ex.points,
            vec![ProjPoint::finite(1), ProjPoint::Finite(z3.clone()), ProjPoint::Finite(&z3 * &z3)]
        );

        let ex = orbit(&[z2, map(&[1, 1], &[1])], &ProjPoint::finite(0), 500);
        assert_eq!((ex.points.len(), ex.status), (500, OrbitStatus::BudgetExceeded));
    }

    #[test]
    fn closed_orbits_are_closed() {
        // ∞ is a first-class point: 1/z swaps 0 and ∞
        let gens = [map(&[1], &[0, 1]), map(&[0, -1], &[1])];
        let ex = orbit(&gens, &ProjPoint::finite(0), 100);
        assert_eq!(ex.status, OrbitStatus::Closed);
        assert_eq!(ex.points.len(), 2);
        for a in action_table(&gens, &ex.points).unwrap() {
            assert!(a.bijective);
        }
    }

    #[test]
    fn actions() {
        let ex = orbit(&[sigma()], &ProjPoint::finite(1), 10);
        let t = action_table(&[sigma()], &ex.points).unwrap();
        assert_eq!(t[0].cycle_type(), Some(vec![3]));

        let z2 = map(&[0, 0, 1], &[1]);
        let t = action_table(std::slice::from_ref(&z2), &[ProjPoint::finite(0)]).unwrap();
        assert!(t[0].is_identity());

        let t = action_table(std::slice::from_ref(&z2), &[ProjPoint::finite(1), ProjPoint::finite(-1)]).unwrap();
        assert_eq!(t[0].images, vec![0, 0]);
        assert!(!t[0].bijective);
        assert_eq!(t[0].cycle_type(), None);

        assert_eq!(action_table(&[z2], &[ProjPoint::finite(2)]), Err(Error::NotInvariant));
    }

    #[test]
    fn orbit_of_periodic_point_stays_periodic_and_small() {
        // f = z⁴ + z commutes with σ; 0 is fixed by f
        let f = map(&[0, 1, 0, 0, 1], &[1]);
        let g = compose(&sigma(), &f);
        let start = ProjPoint::finite(0);
        let ex = orbit(std::slice::from_ref(&g), &start, 100);
        assert_eq!(ex.status, OrbitStatus::Closed);
        assert!(ex.points.len() <= f.degree() + 1);
        for p in &ex.points {
            assert_eq!(f.eval_point(p), *p);
        }
        // ∞ and the rotation orbit of 1 under σ
        let ex = orbit(&[sigma(), map(&[0, 0, 1], &[1])], &ProjPoint::finite(-1), 100);
        assert_eq!(ex.status, OrbitStatus::Closed);
        let z2 = map(&[0, 0, 1], &[1]);
        let f6 = iterate(&z2, 2).unwrap();
        for p in &ex.points {
            // every point is preperiodic for z², and z⁴ fixes the cube roots of unity
            assert_eq!(f6.eval_point(&f6.eval_point(p)), f6.eval_point(p));
        }
    }

    #[test]
    fn classifier() {
        let f = map(&[0, 1, 0, 0, 1], &[1]);
        let big_f = iterate(&f, 3).unwrap();
        let points = [ProjPoint::finite(0)];
        let g = compose(&sigma(), &f);
        let phi_f = classifier_phi(&f, &big_f, &points).unwrap();
        let phi_g = classifier_phi(&g, &big_f, &points).unwrap();
        assert_eq!(phi_f, phi_g);
        assert_eq!(
            phi_f,
            Classification::Defined {
                residue: 2,
                action: Action::identity(1)
            }
        );
        assert_eq!(
            classifier_phi(&big_f, &big_f, &points).unwrap(),
            Classification::Defined {
                residue: 0,
                action: Action::identity(1)
            }
        );
        let deg10 = RationalMap::from_poly(crate::poly::Polynomial::monomial(FieldElement::one(), 10)).unwrap();
        assert_eq!(
            classifier_phi(&deg10, &iterate(&map(&[0, 0, 1], &[1]), 2).unwrap(), &points).unwrap(),
            Classification::Undefined
        );
        // F must fix the orbit
        assert!(matches!(
            classifier_phi(&f, &map(&[1, 0, 1], &[1]), &points),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn classifier_is_a_homomorphism() {
        // z⁴ commutes with σ and fixes the orbit {1, ζ₃, ζ₃²} pointwise
        let f = map(&[0, 0, 0, 0, 1], &[1]);
        let big_f = iterate(&f, 3).unwrap();
        let ex = orbit(&[sigma(), f.clone()], &ProjPoint::finite(1), 100);
        assert_eq!((ex.status, ex.points.len()), (OrbitStatus::Closed, 3));
        let elements = [sigma(), f.clone(), compose(&sigma(), &f), iterate(&f, 2).unwrap()];
        let phi = |g: &RationalMap| match classifier_phi(g, &big_f, &ex.points).unwrap() {
            Classification::Defined { residue, action } => (residue, action),
            Classification::Undefined => panic!("centralizer element without a class"),
        };
        for a in &elements {
            for b in &elements {
                let (ra, aa) = phi(a);
                let (rb, ab) = phi(b);
                let (rc, ac) = phi(&compose(a, b));
                assert_eq!(rc, (ra + rb) % 6);
                assert_eq!(ac, aa.after(&ab));
            }
        }
        assert_eq!(phi(&sigma()).1.cycle_type(), Some(vec![3]));
    }

    #[test]
    fn eq8_examples() {
        assert!(verify_identity_eq8(&chebyshev(2, 1), &chebyshev(3, 1), 1).unwrap());
        assert!(!verify_identity_eq8(&map(&[0, 0, 1], &[1]), &map(&[1, 1], &[1]), 1).unwrap());
        let (g, h) = twisted_pair();
        assert!(verify_identity_eq8(&g, &h, 1).unwrap());
        assert!(matches!(verify_identity_eq8(&g, &h, 2), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn julia_proximity_separates_circle_from_critical_orbits() {
        let z4 = RationalMap::from_ints(&[0, 0, 0, 0, 1], &[1]).unwrap();
        let circle = orbit(&[z4.clone()], &ProjPoint::Finite(FieldElement::zeta(3).unwrap()), 100);
        for v in julia_proximity(&z4, &circle.points, 8) {
            assert!((v - 4f64.ln()).abs() < 1e-9);
        }
        let v = julia_proximity(&z4, &[ProjPoint::finite(0), ProjPoint::Infinity], 4);
        assert!(v.iter().all(|x| *x == f64::NEG_INFINITY));
    }
}
