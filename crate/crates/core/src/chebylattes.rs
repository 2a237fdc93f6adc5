//! Exceptional families: power maps, Chebyshev polynomials and flexible
//! Lattès maps on the x-line of y² = x³ + ax + b.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::mobius::Mobius;
use crate::poly::Polynomial;
use crate::ratmap::{conjugate, ProjPoint, RationalMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionalKind {
    Power,
    Chebyshev,
    FlexibleLattes,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TagParams {
    None,
    /// normal form `constant`·z^{sign·degree}
    Power {
        degree: usize,
        sign: i8,
        constant: FieldElement,
    },
    Chebyshev {
        degree: usize,
        sign: i8,
    },
    Lattes {
        m: u32,
        a: FieldElement,
        b: FieldElement,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalTag {
    pub kind: ExceptionalKind,
    /// Conjugator μ with μ∘f∘μ⁻¹ equal to the normal form; None when the
    /// invariant pair is not defined over the working field.
    pub witness: Option<Mobius>,
    pub params: TagParams,
}

impl ExceptionalTag {
    pub fn none() -> Self {
        ExceptionalTag {
            kind: ExceptionalKind::None,
            witness: None,
            params: TagParams::None,
        }
    }

    /// The normal form the witness conjugates to, when both are known.
    pub fn normal_form(&self) -> Option<RationalMap> {
        match &self.params {
            TagParams::Power {
                degree,
                sign,
                constant,
            } => {
                let mono = Polynomial::monomial(constant.clone(), if *sign > 0 { *degree } else { 0 });
                let den = if *sign > 0 {
                    Polynomial::one()
                } else {
                    Polynomial::monomial(FieldElement::one(), *degree)
                };
                RationalMap::new(mono, den).ok()
            }
            TagParams::Chebyshev { degree, sign } => Some(chebyshev(*degree as u32, *sign)),
            TagParams::Lattes { m, a, b } => lattes_flexible(*m, a, b).ok(),
            TagParams::None => None,
        }
    }
}

/// ±T_d from T₁ = z, T₂ = z² − 2, T_{d+1} = z·T_d − T_{d−1}.
pub fn chebyshev(d: u32, sign: i8) -> RationalMap {
    let p = chebyshev_poly(d);
    let p = if sign < 0 { -&p } else { p };
    RationalMap::from_poly(p).expect("T_d has degree d ≥ 1")
}

pub(crate) fn chebyshev_poly(d: u32) -> Polynomial {
    assert!(d >= 1, "Chebyshev index starts at 1");
    // T₀ = 2 is consistent with T₂ = z·T₁ − T₀
    let mut prev = Polynomial::from_ints(&[2]);
    let mut cur = Polynomial::x();
    for _ in 1..d {
        let next = &cur.shift(1) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Checks numerator(T((z²+1)/z)·z^d − (z^{2d} + 1)) = 0 for a candidate T of degree d.
pub fn semiconjugacy_holds(t: &RationalMap, d: u32) -> bool {
    if !t.is_polynomial() || t.degree() != d as usize {
        return false;
    }
    let p = Polynomial::from_ints(&[1, 0, 1]);
    let q = Polynomial::x();
    let (lhs, _) = crate::ratmap::homogeneous_pair(t.num(), t.den(), d as usize, &p, &q);
    let lhs = lhs.scale(&t.den().coeff(0).inv().expect("constant denominator"));
    let rhs = &Polynomial::monomial(FieldElement::one(), 2 * d as usize) + &Polynomial::one();
    (&lhs - &rhs).is_zero()
}

pub fn verify_chebyshev_semiconjugacy(d: u32) -> bool {
    semiconjugacy_holds(&chebyshev(d, 1), d)
}

/// ζ·z^{±d} with ζ = ζ_k^e (k = unity_order; k = 1 means no root of unity).
pub fn power_map(d: u32, inverse: bool, unity_order: u32, unity_exponent: i64) -> Result<RationalMap> {
    if d == 0 {
        return Err(Error::Precondition("power map needs d ≥ 1".into()));
    }
    let zeta = if unity_order <= 1 {
        FieldElement::one()
    } else {
        FieldElement::zeta_pow(unity_order, unity_exponent)?
    };
    if inverse {
        RationalMap::new(
            Polynomial::constant(zeta),
            Polynomial::monomial(FieldElement::one(), d as usize),
        )
    } else {
        RationalMap::from_poly(Polynomial::monomial(zeta, d as usize))
    }
}

/// Rational roots of a quadratic over Q, if it splits.
fn rational_quadratic_roots(p: &Polynomial) -> Option<(FieldElement, FieldElement)> {
    if p.deg() != 2 || !p.coeffs().iter().all(|c| c.is_rational()) {
        return None;
    }
    let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
    let disc = &(&b * &b) - &(&FieldElement::from(4) * &(&a * &c));
    let (n, d) = disc.as_rational()?;
    if n.is_negative() {
        return None;
    }
    // √(n/d) = √(n·d)/d
    let nd: BigInt = &n * &d;
    let s = nd.sqrt();
    if &s * &s != nd {
        return None;
    }
    let root = FieldElement::rational(s, d).ok()?;
    let two_a = &FieldElement::from(2) * &a;
    let r1 = (&(-&b) + &root).checked_div(&two_a).ok()?;
    let r2 = (&(-&b) - &root).checked_div(&two_a).ok()?;
    Some((r1, r2))
}

/// Detects a totally ramified, fully invariant pair {p, q} and conjugates it to {0, ∞}.
pub fn is_power_conjugate(f: &RationalMap) -> Result<ExceptionalTag> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::Precondition("power conjugacy needs degree ≥ 2".into()));
    }
    let (n, m) = (f.num(), f.den());
    let wr = &(&n.derivative() * m) - &(n * &m.derivative());
    let infinity_mult = 2 * d - 2 - wr.deg();
    // points of local degree d are critical of multiplicity d − 1
    let full: Polynomial = wr
        .squarefree_decomposition()
        .into_iter()
        .filter(|(_, k)| *k == d - 1)
        .fold(Polynomial::one(), |acc, (p, _)| &acc * &p);
    let count = full.deg() + usize::from(infinity_mult == d - 1);
    if count != 2 {
        return Ok(ExceptionalTag::none());
    }
    let pair = if infinity_mult == d - 1 {
        let root = -&full.coeff(0);
        Some((ProjPoint::Finite(root), ProjPoint::Infinity))
    } else {
        rational_quadratic_roots(&full).map(|(a, b)| (ProjPoint::Finite(a), ProjPoint::Finite(b)))
    };
    let Some((p, q)) = pair else {
        // the pair is conjugate over a quadratic extension: test invariance of
        // the quadratic itself
        let (img, _) = crate::ratmap::homogeneous_pair(&full, &Polynomial::one(), 2, n, m);
        if img.rem(&full).is_zero() {
            return Ok(ExceptionalTag {
                kind: ExceptionalKind::Power,
                witness: None,
                params: TagParams::Power {
                    degree: d,
                    sign: 0,
                    constant: FieldElement::zero(),
                },
            });
        }
        return Ok(ExceptionalTag::none());
    };
    let (fp, fq) = (f.eval_point(&p), f.eval_point(&q));
    let invariant = (fp == p && fq == q) || (fp == q && fq == p);
    if !invariant {
        return Ok(ExceptionalTag::none());
    }
    let mu = Mobius::to_zero_infinity(&p, &q)?;
    let normal = conjugate(f, &mu.inverse());
    let sign: i8 = if fp == p { 1 } else { -1 };
    let constant = if sign > 0 {
        normal.num().lead_or_zero()
    } else {
        normal.num().coeff(0)
    };
    Ok(ExceptionalTag {
        kind: ExceptionalKind::Power,
        witness: Some(mu),
        params: TagParams::Power {
            degree: d,
            sign,
            constant,
        },
    })
}

/// Power-map detection followed by the ±T_d identity check.
pub fn classify_exceptional(f: &RationalMap) -> Result<ExceptionalTag> {
    let tag = is_power_conjugate(f)?;
    if tag.kind != ExceptionalKind::None {
        return Ok(tag);
    }
    let d = f.degree() as u32;
    for sign in [1i8, -1] {
        if *f == chebyshev(d, sign) {
            return Ok(ExceptionalTag {
                kind: ExceptionalKind::Chebyshev,
                witness: Some(Mobius::identity()),
                params: TagParams::Chebyshev {
                    degree: d as usize,
                    sign,
                },
            });
        }
    }
    Ok(ExceptionalTag::none())
}

/// Whether f is the multiplication-by-m Lattès map of the given curve.
pub fn recognize_lattes(f: &RationalMap, a: &FieldElement, b: &FieldElement) -> Result<ExceptionalTag> {
    let d = f.degree() as u32;
    let m = (d as f64).sqrt().round() as u32;
    if m * m == d && m >= 2 && *f == lattes_flexible(m, a, b)? {
        return Ok(ExceptionalTag {
            kind: ExceptionalKind::FlexibleLattes,
            witness: Some(Mobius::identity()),
            params: TagParams::Lattes {
                m,
                a: a.clone(),
                b: b.clone(),
            },
        });
    }
    Ok(ExceptionalTag::none())
}

/// g(x)·y^e with y² = x³ + ax + b substituted away (e ∈ {0, 1}).
#[derive(Clone)]
struct Psi {
    g: Polynomial,
    e: u8,
}

/// Division polynomials of one curve, memoized in a single-owner table.
pub struct DivisionPolynomials {
    curve: Polynomial,
    a: FieldElement,
    b: FieldElement,
    psi: Vec<Psi>,
}

impl DivisionPolynomials {
    pub fn new(a: &FieldElement, b: &FieldElement) -> Result<Self> {
        let disc = &(&FieldElement::from(4) * &a.pow(3)) + &(&FieldElement::from(27) * &b.pow(2));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        let curve = Polynomial::new(vec![b.clone(), a.clone(), FieldElement::zero(), FieldElement::one()]);
        Ok(DivisionPolynomials {
            curve,
            a: a.clone(),
            b: b.clone(),
            psi: Vec::new(),
        })
    }

    fn mul(&self, p: &Psi, q: &Psi) -> Psi {
        if p.g.is_zero() || q.g.is_zero() {
            return Psi {
                g: Polynomial::zero(),
                e: 0,
            };
        }
        let mut g = &p.g * &q.g;
        let mut e = p.e + q.e;
        if e >= 2 {
            g = &g * &self.curve;
            e -= 2;
        }
        Psi { g, e }
    }

    fn sub(p: &Psi, q: &Psi) -> Psi {
        debug_assert!(p.e == q.e || p.g.is_zero() || q.g.is_zero());
        Psi {
            g: &p.g - &q.g,
            e: p.e.max(q.e),
        }
    }

    fn base(&self, n: usize) -> Psi {
        let (a, b) = (&self.a, &self.b);
        let f = |v: i64| FieldElement::from(v);
        match n {
            0 => Psi {
                g: Polynomial::zero(),
                e: 0,
            },
            1 => Psi {
                g: Polynomial::one(),
                e: 0,
            },
            2 => Psi {
                g: Polynomial::from_ints(&[2]),
                e: 1,
            },
            3 => Psi {
                g: Polynomial::new(vec![
                    -&a.pow(2),
                    &f(12) * b,
                    &f(6) * a,
                    FieldElement::zero(),
                    f(3),
                ]),
                e: 0,
            },
            4 => Psi {
                g: Polynomial::new(vec![
                    &(&f(-8) * &b.pow(2)) - &a.pow(3),
                    &f(-4) * &(a * b),
                    &f(-5) * &a.pow(2),
                    &f(20) * b,
                    &f(5) * a,
                    FieldElement::zero(),
                    FieldElement::one(),
                ])
                .scale(&f(4)),
                e: 1,
            },
            _ => unreachable!(),
        }
    }

    fn psi(&mut self, n: usize) -> Psi {
        while self.psi.len() <= n {
            let k = self.psi.len();
            let next = if k <= 4 {
                self.base(k)
            } else if k % 2 == 1 {
                let m = (k - 1) / 2;
                let (p0, p1, p2, pm1) = (
                    self.psi[m].clone(),
                    self.psi[m + 1].clone(),
                    self.psi[m + 2].clone(),
                    self.psi[m - 1].clone(),
                );
                let t1 = self.mul(&p2, &self.mul(&p0, &self.mul(&p0, &p0)));
                let t2 = self.mul(&pm1, &self.mul(&p1, &self.mul(&p1, &p1)));
                Self::sub(&t1, &t2)
            } else {
                let m = k / 2;
                let (p0, p1, p2, pm1, pm2) = (
                    self.psi[m].clone(),
                    self.psi[m + 1].clone(),
                    self.psi[m + 2].clone(),
                    self.psi[m - 1].clone(),
                    self.psi[m - 2].clone(),
                );
                let t1 = self.mul(&p2, &self.mul(&pm1, &pm1));
                let t2 = self.mul(&pm2, &self.mul(&p1, &p1));
                let inner = self.mul(&p0, &Self::sub(&t1, &t2));
                // divide by 2y
                let half = FieldElement::rational(1, 2).expect("nonzero");
                if inner.e == 1 {
                    Psi {
                        g: inner.g.scale(&half),
                        e: 0,
                    }
                } else {
                    let q = inner
                        .g
                        .exact_quotient(&self.curve)
                        .expect("even division polynomial carries a y factor");
                    Psi { g: q.scale(&half), e: 1 }
                }
            };
            self.psi.push(next);
        }
        self.psi[n].clone()
    }

    /// x-coordinate of [m]: φ_m/ψ_m² with φ_m = xψ_m² − ψ_{m+1}ψ_{m−1}.
    pub fn x_multiplication(&mut self, m: u32) -> Result<RationalMap> {
        if m == 0 {
            return Err(Error::Precondition("multiplier must be at least 1".into()));
        }
        let m = m as usize;
        let pm = self.psi(m);
        let sq = self.mul(&pm, &pm);
        let prod = {
            let (a, b) = (self.psi(m + 1), self.psi(m - 1));
            self.mul(&a, &b)
        };
        debug_assert!(sq.e == 0 && prod.e == 0);
        let phi = &sq.g.shift(1) - &prod.g;
        RationalMap::new(phi, sq.g)
    }
}

/// The degree-m² map induced by multiplication by m on the x-line.
pub fn lattes_flexible(m: u32, a: &FieldElement, b: &FieldElement) -> Result<RationalMap> {
    DivisionPolynomials::new(a, b)?.x_multiplication(m)
}
