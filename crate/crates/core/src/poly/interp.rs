//! Newton interpolation at small integer nodes.

use crate::field::FieldElement;

use super::Polynomial;

/// Sample nodes 0, 1, −1, 2, −2, … skipping those rejected by `bad`.
pub fn sample_points(count: usize, mut bad: impl FnMut(&FieldElement) -> bool) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(count);
    let mut i: i64 = 0;
    while out.len() < count {
        let v = if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 };
        i += 1;
        let x = FieldElement::from(v);
        if !bad(&x) {
            out.push(x);
        }
    }
    out
}

/// The unique polynomial of degree < xs.len() through the given values.
pub fn interpolate(xs: &[FieldElement], ys: &[FieldElement]) -> Polynomial {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut c: Vec<FieldElement> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &c[i] - &c[i - 1];
            if num.is_zero() {
                c[i] = num;
                continue;
            }
            let den = &xs[i] - &xs[i - j];
            c[i] = num.checked_div(&den).expect("distinct interpolation nodes");
        }
    }
    let mut p = Polynomial::zero();
    for i in (0..n).rev() {
        let lin = Polynomial::new(vec![-&xs[i], FieldElement::one()]);
        p = &(&p * &lin) + &Polynomial::constant(c[i].clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_polynomial() {
        let f = Polynomial::from_ints(&[3, -1, 0, 2, 5]);
        let xs = sample_points(5, |_| false);
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }

    #[test]
    fn skips_rejected_nodes() {
        let xs = sample_points(3, |x| x.is_zero());
        assert_eq!(xs, vec![FieldElement::from(1), FieldElement::from(-1), FieldElement::from(2)]);
    }
}
