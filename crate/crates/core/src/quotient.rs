//! Exact arithmetic in Q(ζ_k)[z]/(S) on integer representatives.
//!
//! Reducing modulo S over the field renormalizes every rational coefficient
//! at every step, which dominates once S has degree in the dozens.  Here a
//! residue is an integer polynomial over Z[ζ_k] times an explicit rational
//! scale, reduced by pseudo-division and kept primitive.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{cyclotomic_coeffs, integer_rows, reduce_mod, row_product, totient};
use crate::poly::Polynomial;

type Cell = Vec<BigInt>;

#[derive(Debug, Clone)]
pub(crate) struct QuotientRing {
    k: u32,
    width: usize,
    phi: Arc<Vec<i64>>,
    modulus: Vec<Cell>,
    lead: BigInt,
}

/// The class of `rows · num / den`.
#[derive(Debug, Clone)]
pub(crate) struct Residue {
    rows: Vec<Cell>,
    num: BigInt,
    den: BigInt,
}

fn trim(rows: &mut Vec<Cell>) {
    for c in rows.iter_mut() {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
    }
    while rows.last().is_some_and(|c| c.is_empty()) {
        rows.pop();
    }
}

fn content(rows: &[Cell]) -> BigInt {
    let mut g = BigInt::zero();
    for x in rows.iter().flatten() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

fn axpy(target: &mut Cell, c: &Cell, sign: bool) {
    if target.len() < c.len() {
        target.resize(c.len(), BigInt::zero());
    }
    for (t, x) in target.iter_mut().zip(c) {
        if sign {
            *t += x;
        } else {
            *t -= x;
        }
    }
}

impl QuotientRing {
    /// The ring modulo `s`, which must have a rational leading coefficient;
    /// every element later passed in must live in Q(ζ_k).
    pub(crate) fn new(s: &Polynomial, k: u32) -> Self {
        let phi = cyclotomic_coeffs(k, u32::MAX).expect("conductor already validated");
        let (mut modulus, _) = integer_rows(s.coeffs(), k);
        trim(&mut modulus);
        let g = content(&modulus);
        for x in modulus.iter_mut().flatten() {
            *x /= &g;
        }
        let top = modulus.last().expect("nonconstant modulus");
        assert!(top.len() == 1, "modulus must have a rational leading coefficient");
        let lead = top[0].clone();
        QuotientRing {
            k,
            width: totient(k) as usize,
            phi,
            modulus,
            lead,
        }
    }

    fn cell_mul(&self, a: &Cell, b: &Cell) -> Cell {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        reduce_mod(&mut out, &self.phi);
        out
    }

    pub(crate) fn element(&self, p: &Polynomial) -> Residue {
        let (rows, den) = integer_rows(p.coeffs(), self.k);
        let mut r = Residue {
            rows,
            num: BigInt::one(),
            den,
        };
        self.reduce(&mut r);
        r
    }

    pub(crate) fn one(&self) -> Residue {
        self.element(&Polynomial::one())
    }

    fn reduce(&self, r: &mut Residue) {
        trim(&mut r.rows);
        let n = self.modulus.len() - 1;
        while r.rows.len() > n {
            let top = r.rows.pop().expect("nonempty");
            let shift = r.rows.len() - n;
            if !self.lead.is_one() {
                for x in r.rows.iter_mut().flatten() {
                    *x *= &self.lead;
                }
                r.den *= &self.lead;
            }
            for (j, m) in self.modulus[..n].iter().enumerate() {
                if m.is_empty() {
                    continue;
                }
                let prod = self.cell_mul(&top, m);
                axpy(&mut r.rows[shift + j], &prod, false);
            }
            trim(&mut r.rows);
        }
        let g = content(&r.rows);
        if g.is_zero() {
            r.num = BigInt::zero();
            r.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for x in r.rows.iter_mut().flatten() {
                *x /= &g;
            }
            r.num *= g;
        }
        let h = r.num.gcd(&r.den);
        r.num /= &h;
        r.den /= &h;
    }

    pub(crate) fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        if a.rows.is_empty() || b.rows.is_empty() {
            return Residue {
                rows: Vec::new(),
                num: BigInt::zero(),
                den: BigInt::one(),
            };
        }
        let pad = |rows: &[Cell]| -> Vec<Cell> {
            rows.iter()
                .map(|c| {
                    if c.is_empty() {
                        Vec::new()
                    } else {
                        let mut c = c.clone();
                        c.resize(self.width, BigInt::zero());
                        c
                    }
                })
                .collect()
        };
        let mut rows = row_product(&pad(&a.rows), &pad(&b.rows), self.width);
        for c in rows.iter_mut() {
            reduce_mod(c, &self.phi);
        }
        let mut r = Residue {
            rows,
            num: &a.num * &b.num,
            den: &a.den * &b.den,
        };
        self.reduce(&mut r);
        r
    }

    /// a·sa + b·sb, for signs sa, sb.
    fn combine(&self, a: &Residue, b: &Residue, negate_b: bool) -> Residue {
        let fa = &a.num * &b.den;
        let fb = &b.num * &a.den;
        let mut rows: Vec<Cell> = vec![Vec::new(); a.rows.len().max(b.rows.len())];
        for (i, c) in a.rows.iter().enumerate() {
            let scaled: Cell = c.iter().map(|x| x * &fa).collect();
            axpy(&mut rows[i], &scaled, true);
        }
        for (i, c) in b.rows.iter().enumerate() {
            let scaled: Cell = c.iter().map(|x| x * &fb).collect();
            axpy(&mut rows[i], &scaled, !negate_b);
        }
        let mut r = Residue {
            rows,
            num: BigInt::one(),
            den: &a.den * &b.den,
        };
        self.reduce(&mut r);
        r
    }

    pub(crate) fn add(&self, a: &Residue, b: &Residue) -> Residue {
        self.combine(a, b, false)
    }

    pub(crate) fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        self.combine(a, b, true)
    }
}

impl Residue {
    pub(crate) fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;

    #[test]
    fn matches_field_reduction() {
        let z3 = FieldElement::zeta(3).unwrap();
        let s = Polynomial::new(vec![
            FieldElement::rational(3, 7).unwrap(),
            z3.clone(),
            FieldElement::from(-2),
            FieldElement::one(),
        ]);
        let a = Polynomial::new(vec![z3.clone(), FieldElement::rational(1, 5).unwrap(), FieldElement::from(4), z3.clone(), FieldElement::one()]);
        let b = Polynomial::new(vec![FieldElement::from(2), z3.clone(), FieldElement::rational(-3, 2).unwrap()]);
        let ring = QuotientRing::new(&s, 3);
        let prod = ring.mul(&ring.element(&a), &ring.element(&b));
        let expected = ring.element(&(&a * &b).rem(&s));
        assert!(ring.sub(&prod, &expected).is_zero());
        let sum = ring.add(&ring.element(&a), &ring.element(&b));
        assert!(ring.sub(&sum, &ring.element(&(&a + &b))).is_zero());
        assert!(!ring.sub(&prod, &ring.one()).is_zero());
        assert!(ring.element(&(&s * &b)).is_zero());
    }
}
