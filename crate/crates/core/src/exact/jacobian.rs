//! Jacobian matrices and polynomial determinants, used for the
//! characteristic-zero algebraic independence test.

use super::field::Field;
use super::laurent::MLaurent;
use crate::error::{Error, Result};

pub type PolyMatrix<S> = Vec<Vec<MLaurent<S>>>;

/// `J[i][j] = d fs[i] / d v_j`.
pub fn jacobian<S: Field>(fs: &[MLaurent<S>]) -> Result<PolyMatrix<S>> {
    let n = fs.len();
    if let Some(bad) = fs.iter().find(|f| f.nvars() != n) {
        return Err(Error::Shape(format!(
            "{n} polynomials in {} variables is not a square system",
            bad.nvars()
        )));
    }
    Ok(fs
        .iter()
        .map(|f| (0..n).map(|j| f.derivative(j)).collect())
        .collect())
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in the polynomial ring.
pub fn determinant<S: Field>(m: &PolyMatrix<S>) -> Result<MLaurent<S>> {
    let n = m.len();
    let nvars = m.first().and_then(|r| r.first()).map_or(0, |p| p.nvars());
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(MLaurent::one(nvars));
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = MLaurent::one(nvars);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(MLaurent::zero(nvars));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Internal("inexact Bareiss division".into()))?;
            }
            a[i][k] = MLaurent::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{int, Rational};

    type P = MLaurent<Rational>;

    fn h(i: usize) -> P {
        P::var(2, i)
    }

    #[test]
    fn identity_system() {
        let j = jacobian(&[h(0), h(1)]).unwrap();
        assert!(j[0][0].is_one() && j[1][1].is_one());
        assert!(j[0][1].is_zero() && j[1][0].is_zero());
        assert!(determinant(&j).unwrap().is_one());
    }

    #[test]
    fn square_in_first_variable() {
        let j = jacobian(&[&h(0) * &h(0), h(1)]).unwrap();
        assert_eq!(determinant(&j).unwrap(), h(0).scale(&int(2)));
    }

    #[test]
    fn dependent_system() {
        let s = &h(0) + &h(1);
        let j = jacobian(&[s.clone(), s]).unwrap();
        assert!(determinant(&j).unwrap().is_zero());
    }

    #[test]
    fn non_square_rejected() {
        assert!(jacobian(&[h(0)]).is_err());
    }

    #[test]
    fn three_by_three_matches_expansion() {
        // det of [[x1, 1, 0], [0, x2, 1], [1, 0, x3]] = x1 x2 x3 + 1
        let x = |i| P::var(3, i);
        let o = P::one(3);
        let z = P::zero(3);
        let m = vec![
            vec![x(0), o.clone(), z.clone()],
            vec![z.clone(), x(1), o.clone()],
            vec![o.clone(), z, x(2)],
        ];
        assert_eq!(determinant(&m).unwrap(), &(&(&x(0) * &x(1)) * &x(2)) + &o);
    }
}
