//! Bivariate polynomials Σ_j c_j(x)·w^j over the working field.
//!
//! The first variable is the inner one (coefficients are polynomials in
//! it); the second variable indexes the rows.  Gcds are computed by
//! evaluating the first variable at integer points, taking univariate gcds
//! and interpolating back (Brown's dense scheme) with a trial-division
//! check; `gcd_prs` is the direct subresultant route over K[x].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;

use super::gcd::{resultant, subresultant_gcd};
use super::interp::{interpolate, sample_points};
use super::{Poly, Polynomial};

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    p: Poly<Polynomial>,
}

impl BiPoly {
    pub fn new(rows: Vec<Polynomial>) -> Self {
        BiPoly { p: Poly::new(rows) }
    }

    pub fn from_poly(p: Poly<Polynomial>) -> Self {
        BiPoly { p }
    }

    pub fn zero() -> Self {
        BiPoly { p: Poly::zero() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![Polynomial::constant(c)])
    }

    /// Builds Σ c·x^i·w^j from (i, j, c) triples.
    pub fn from_terms(terms: &[(usize, usize, FieldElement)]) -> Self {
        let rows = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut r: Vec<Vec<FieldElement>> = vec![Vec::new(); rows];
        for (i, j, c) in terms {
            if r[*j].len() <= *i {
                r[*j].resize(i + 1, FieldElement::zero());
            }
            r[*j][*i] = &r[*j][*i] + c;
        }
        Self::new(r.into_iter().map(Polynomial::new).collect())
    }

    /// A polynomial in the first variable only.
    pub fn from_first(p: Polynomial) -> Self {
        Self::new(vec![p])
    }

    /// A polynomial in the second variable only.
    pub fn from_second(p: &Polynomial) -> Self {
        Self::new(p.coeffs().iter().map(|c| Polynomial::constant(c.clone())).collect())
    }

    pub fn as_poly(&self) -> &Poly<Polynomial> {
        &self.p
    }

    pub fn rows(&self) -> &[Polynomial] {
        self.p.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.p.coeffs().get(j).map_or_else(FieldElement::zero, |r| r.coeff(i))
    }

    pub fn deg_first(&self) -> usize {
        self.rows().iter().map(|r| r.deg()).max().unwrap_or(0)
    }

    pub fn deg_second(&self) -> usize {
        self.p.deg()
    }

    /// (degree in the first variable, degree in the second variable).
    pub fn bidegree(&self) -> (usize, usize) {
        (self.deg_first(), self.deg_second())
    }

    /// Swaps the two variables.
    pub fn transpose(&self) -> Self {
        let n = self.deg_first() + 1;
        let mut cols: Vec<Vec<FieldElement>> = vec![Vec::new(); n];
        for (j, row) in self.rows().iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                if cols[i].len() <= j {
                    cols[i].resize(j + 1, FieldElement::zero());
                }
                cols[i][j] = c.clone();
            }
        }
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(cols.into_iter().map(Polynomial::new).collect())
    }

    /// Polynomial in the second variable obtained by fixing the first.
    pub fn eval_first(&self, x: &FieldElement) -> Polynomial {
        Polynomial::new(self.rows().iter().map(|r| r.eval(x)).collect())
    }

    /// Polynomial in the first variable obtained by fixing the second.
    pub fn eval_second(&self, w: &FieldElement) -> Polynomial {
        let mut acc = Polynomial::zero();
        for r in self.rows().iter().rev() {
            acc = &acc.scale(w) + r;
        }
        acc
    }

    pub fn eval(&self, x: &FieldElement, w: &FieldElement) -> FieldElement {
        self.eval_first(x).eval(w)
    }

    /// ∂/∂(second variable).
    pub fn derivative_second(&self) -> Self {
        BiPoly { p: self.p.derivative() }
    }

    /// ∂/∂(first variable).
    pub fn derivative_first(&self) -> Self {
        Self::new(self.rows().iter().map(|r| r.derivative()).collect())
    }

    /// Leading coefficient in the second variable, a polynomial in the first.
    pub fn lead_second(&self) -> Polynomial {
        self.p.lead_or_zero()
    }

    /// Monic gcd of the rows: the factor depending on the first variable only.
    pub fn content_first(&self) -> Polynomial {
        let mut g = Polynomial::zero();
        for r in self.rows() {
            g = g.gcd(r);
            if g.deg() == 0 && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Monic factor depending on the second variable only.
    pub fn content_second(&self) -> Polynomial {
        self.transpose().content_first()
    }

    /// Divides every row by a polynomial in the first variable.
    pub fn div_first(&self, d: &Polynomial) -> Option<Self> {
        let rows: Option<Vec<_>> = self.rows().iter().map(|r| r.exact_quotient(d)).collect();
        rows.map(Self::new)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.rows().iter().map(|r| r.scale(c)).collect())
    }

    pub fn mul_first(&self, d: &Polynomial) -> Self {
        Self::new(self.rows().iter().map(|r| r * d).collect())
    }

    /// Exact quotient, or None when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.deg_second() == 0 {
            return self.div_first(&d.rows()[0]);
        }
        self.p.exact_quotient(&d.p).map(|p| BiPoly { p })
    }

    /// Lex-leading coefficient: top power of the second variable, then of the first.
    pub fn lex_lead(&self) -> FieldElement {
        self.p.lead().map_or_else(FieldElement::zero, |r| r.lead_or_zero())
    }

    /// Scalar multiple with lex-leading coefficient 1.
    pub fn normalized(&self) -> Self {
        let l = self.lex_lead();
        if l.is_zero() || l.is_one() {
            return self.clone();
        }
        self.scale(&l.inv().expect("nonzero"))
    }

    /// Primitive part with respect to the second variable, plus its content.
    fn split_content(&self) -> (Polynomial, Self) {
        let c = self.content_first();
        let pp = self.div_first(&c).expect("content divides");
        (c, pp)
    }

    /// Normalized gcd by evaluation/interpolation in the first variable.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let (ca, a) = self.split_content();
        let (cb, b) = o.split_content();
        let c = BiPoly::from_first(ca.gcd(&cb));
        if a.deg_second() == 0 || b.deg_second() == 0 {
            return c.normalized();
        }
        let g = primitive_gcd_eval(&a, &b);
        (&c * &g).normalized()
    }

    /// Normalized gcd through the subresultant sequence over K[first].
    pub fn gcd_prs(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let (ca, a) = self.split_content();
        let (cb, b) = o.split_content();
        let c = BiPoly::from_first(ca.gcd(&cb));
        let g = BiPoly { p: subresultant_gcd(&a.p, &b.p) };
        let (_, g) = g.split_content();
        (&c * &g).normalized()
    }

    /// Product of distinct irreducible factors, normalized.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (c, pp) = self.split_content();
        let sx = BiPoly::from_first(c.squarefree_part());
        if pp.deg_second() == 0 {
            return Ok(sx.normalized());
        }
        let g = pp.gcd(&pp.derivative_second());
        let q = pp.exact_div(&g).expect("gcd divides");
        Ok((&sx * &q).normalized())
    }

    /// Removes every factor that depends on only one variable.
    pub fn without_contents(&self) -> Self {
        let (_, pp) = self.split_content();
        let t = pp.transpose();
        let (_, pt) = t.split_content();
        pt.transpose()
    }

    /// Text form with the given variable names, highest powers first.
    pub fn fmt_vars(&self, first: &str, second: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (j, row) in self.rows().iter().enumerate().rev() {
            for (i, a) in row.coeffs().iter().enumerate().rev() {
                if a.is_zero() {
                    continue;
                }
                let (neg, s) = a.signed_factor();
                let mut mono = Vec::new();
                match i {
                    0 => {}
                    1 => mono.push(first.to_string()),
                    _ => mono.push(format!("{}^{}", first, i)),
                }
                match j {
                    0 => {}
                    1 => mono.push(second.to_string()),
                    _ => mono.push(format!("{}^{}", second, j)),
                }
                let m = mono.join("*");
                let term = if m.is_empty() {
                    s
                } else if s == "1" {
                    m
                } else {
                    format!("{}*{}", s, m)
                };
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                out.push_str(&term);
            }
        }
        out
    }
}

/// Gcd of two polynomials that are primitive in the second variable.
fn primitive_gcd_eval(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let la = a.lead_second();
    let lb = b.lead_second();
    let gamma = la.gcd(&lb);
    let bound = gamma.deg() + a.deg_first().min(b.deg_first());
    let max_points = 4 * (bound + 1) + 64;

    let mut xs: Vec<FieldElement> = Vec::new();
    let mut images: Vec<Polynomial> = Vec::new();
    let mut cur: Option<usize> = None;
    let mut tried = 0usize;
    let mut node: i64 = 0;
    loop {
        let v = if node % 2 == 0 { -(node / 2) } else { node / 2 + 1 };
        node += 1;
        let x = FieldElement::from(v);
        if la.eval(&x).is_zero() || lb.eval(&x).is_zero() {
            continue;
        }
        tried += 1;
        assert!(tried <= max_points, "bivariate gcd failed to converge");
        let gi = a.eval_first(&x).gcd(&b.eval_first(&x));
        let d = gi.deg();
        if d == 0 {
            return BiPoly::one();
        }
        match cur {
            Some(c) if d > c => continue,
            Some(c) if d == c => {}
            _ => {
                cur = Some(d);
                xs.clear();
                images.clear();
            }
        }
        xs.push(x.clone());
        images.push(gi.scale(&gamma.eval(&x)));
        if xs.len() < bound + 1 {
            continue;
        }
        let rows: Vec<Polynomial> = (0..=d)
            .map(|j| {
                let ys: Vec<_> = images.iter().map(|g| g.coeff(j)).collect();
                interpolate(&xs, &ys)
            })
            .collect();
        let (_, g) = BiPoly::new(rows).split_content();
        if a.exact_div(&g).is_some() && b.exact_div(&g).is_some() {
            return g;
        }
    }
}

/// Res_y(P(x, y), Q(y, w)) as a polynomial in (x, w), without any clean-up.
///
/// `p` has first variable x and second y; `q` has first variable y and
/// second w.  Computed from values on a grid avoiding the zeros of both
/// leading coefficients in y, followed by 2-D interpolation.
pub fn resultant_middle(p: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
    let m = p.deg_second();
    let n = q.deg_first();
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if m == 0 || n == 0 {
        return Err(Error::Precondition(
            "both inputs need positive degree in the eliminated variable".into(),
        ));
    }
    let dx = n * p.deg_first();
    let dw = m * q.deg_second();
    let lp = p.lead_second();
    let qt = q.transpose();
    let lq = qt.lead_second();
    let xs = sample_points(dx + 1, |x| lp.eval(x).is_zero());
    let ws = sample_points(dw + 1, |w| lq.eval(w).is_zero());
    let qs: Vec<Polynomial> = ws.iter().map(|w| q.eval_second(w)).collect();
    let mut per_x: Vec<Polynomial> = Vec::with_capacity(xs.len());
    for x in &xs {
        let px = p.eval_first(x);
        let vals: Vec<FieldElement> = qs.iter().map(|qw| resultant(&px, qw)).collect();
        per_x.push(interpolate(&ws, &vals));
    }
    let rows: Vec<Polynomial> = (0..=dw)
        .map(|k| {
            let ys: Vec<_> = per_x.iter().map(|r| r.coeff(k)).collect();
            interpolate(&xs, &ys)
        })
        .collect();
    Ok(BiPoly::new(rows))
}

/// Eliminates the shared variable and cleans the result: contents in both
/// remaining variables removed, squarefree, normalized.
pub fn resultant_eliminate(p: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
    let r = resultant_middle(p, q)?;
    if r.is_zero() {
        return Err(Error::DegenerateComposition);
    }
    r.without_contents().squarefree_part()
}

impl std::ops::Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        BiPoly { p: &self.p * &o.p }
    }
}

impl std::ops::Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        BiPoly { p: &self.p + &o.p }
    }
}

impl std::ops::Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        BiPoly { p: &self.p - &o.p }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_vars("x", "w"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, j: usize, c: i64) -> (usize, usize, FieldElement) {
        (i, j, FieldElement::from(c))
    }

    #[test]
    fn eliminate_examples() {
        // P = y − x in (x, y); Q = w − y² in (y, w)
        let p = BiPoly::from_terms(&[t(0, 1, 1), t(1, 0, -1)]);
        let q = BiPoly::from_terms(&[t(0, 1, 1), t(2, 0, -1)]);
        let r = resultant_eliminate(&p, &q).unwrap();
        assert_eq!(r, BiPoly::from_terms(&[t(0, 1, 1), t(2, 0, -1)]));

        let q = BiPoly::from_terms(&[t(0, 1, 1), t(1, 0, -1)]);
        let r = resultant_eliminate(&p, &q).unwrap();
        assert_eq!(r, BiPoly::from_terms(&[t(0, 1, 1), t(1, 0, -1)]));

        // P = y² − x, Q = w − y → w² − x
        let p = BiPoly::from_terms(&[t(0, 2, 1), t(1, 0, -1)]);
        let r = resultant_eliminate(&p, &q).unwrap();
        assert_eq!(r, BiPoly::from_terms(&[t(0, 2, 1), t(1, 0, -1)]));
    }

    #[test]
    fn squarefree_bivariate() {
        // (xy − 1)² → xy − 1
        let f = BiPoly::from_terms(&[t(1, 1, 1), t(0, 0, -1)]);
        let sq = &f * &f;
        assert_eq!(sq.squarefree_part().unwrap(), f);
        // x-content squared as well
        let g = &BiPoly::from_first(Polynomial::from_ints(&[1, 1]).pow(2)) * &sq;
        assert_eq!(
            g.squarefree_part().unwrap(),
            &BiPoly::from_first(Polynomial::from_ints(&[1, 1])) * &f
        );
    }

    #[test]
    fn gcd_routes_agree() {
        let f = BiPoly::from_terms(&[t(0, 2, 1), t(2, 0, -1), t(1, 1, 3), t(0, 0, 5)]);
        let g1 = BiPoly::from_terms(&[t(0, 1, 1), t(3, 0, 1), t(1, 0, -2)]);
        let g2 = BiPoly::from_terms(&[t(1, 3, 2), t(0, 0, 1)]);
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(a.gcd(&b), f.normalized());
        assert_eq!(a.gcd_prs(&b), f.normalized());
    }

    #[test]
    fn transpose_round_trip() {
        let f = BiPoly::from_terms(&[t(0, 2, 1), t(3, 0, -1), t(1, 1, 7)]);
        assert_eq!(f.transpose().transpose(), f);
        assert_eq!(f.transpose().coeff(2, 0), FieldElement::from(1));
    }

    #[test]
    fn display() {
        let f = BiPoly::from_terms(&[t(0, 2, 1), t(2, 0, -1)]);
        assert_eq!(f.to_string(), "w^2 - x^2");
    }
}
