//! Exact Gaussian elimination over the working field.

use crate::error::{Error, Result};
use crate::field::FieldElement;

pub type Matrix = Vec<Vec<FieldElement>>;

#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution {
    Solution(Vec<FieldElement>),
    NoSolution,
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for v in m[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..m[i].len() {
                if !m[r][j].is_zero() {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn check_width(a: &Matrix) -> Result<usize> {
    let w = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != w) {
        return Err(Error::DimensionMismatch("ragged matrix".into()));
    }
    Ok(w)
}

/// One solution of a·x = rhs, free variables set to zero.
pub fn linear_solve(a: &Matrix, rhs: &[FieldElement]) -> Result<LinearSolution> {
    let cols = check_width(a)?;
    if a.len() != rhs.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but {} right-hand entries",
            a.len(),
            rhs.len()
        )));
    }
    let mut m: Matrix = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, cols);
    if pivots.len() < m.len() && m[pivots.len()..].iter().any(|r| !r[cols].is_zero()) {
        return Ok(LinearSolution::NoSolution);
    }
    let mut x = vec![FieldElement::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Ok(LinearSolution::Solution(x))
}

/// Basis of the right kernel of `a` (columns = unknowns).
pub fn nullspace(a: &Matrix, cols: usize) -> Result<Vec<Vec<FieldElement>>> {
    if !a.is_empty() && check_width(a)? != cols {
        return Err(Error::DimensionMismatch("column count".into()));
    }
    let mut m = a.clone();
    let pivots = rref(&mut m, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::zero(); cols];
        v[free] = FieldElement::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -&m[i][free];
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: i64) -> FieldElement {
        FieldElement::from(v)
    }

    #[test]
    fn identity_system() {
        let a = vec![vec![f(1), f(0)], vec![f(0), f(1)]];
        let v = vec![f(4), f(-2)];
        assert_eq!(linear_solve(&a, &v).unwrap(), LinearSolution::Solution(v));
    }

    #[test]
    fn one_by_one() {
        let sol = linear_solve(&vec![vec![f(2)]], &[f(3)]).unwrap();
        assert_eq!(sol, LinearSolution::Solution(vec![FieldElement::rational(3, 2).unwrap()]));
    }

    #[test]
    fn inconsistent() {
        let sol = linear_solve(&vec![vec![f(0)]], &[f(1)]).unwrap();
        assert_eq!(sol, LinearSolution::NoSolution);
    }

    #[test]
    fn underdetermined_sets_free_to_zero() {
        let a = vec![vec![f(1), f(1)]];
        let sol = linear_solve(&a, &[f(5)]).unwrap();
        assert_eq!(sol, LinearSolution::Solution(vec![f(5), f(0)]));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(linear_solve(&vec![vec![f(1)]], &[f(1), f(2)]).is_err());
    }

    #[test]
    fn kernel() {
        let a = vec![vec![f(1), f(2), f(3)], vec![f(2), f(4), f(6)]];
        let k = nullspace(&a, 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in k {
            let s = &(&v[0] + &(&f(2) * &v[1])) + &(&f(3) * &v[2]);
            assert!(s.is_zero());
        }
    }
}
