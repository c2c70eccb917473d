//! Automorphisms of the coefficient rings: additive shifts of polynomial
//! variables and multiplicative scalings of Laurent variables.

use std::collections::HashMap;

use super::field::Field;
use super::laurent::MLaurent;
use crate::error::{Error, Result};

/// `Shift(c)`: `v_j -> v_j + c_j`. `Scale(s)`: `v_j -> s_j * v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoSpec<S> {
    Shift(Vec<S>),
    Scale(Vec<S>),
}

impl<S: Field> EndoSpec<S> {
    pub fn identity_shift(n: usize) -> Self {
        EndoSpec::Shift(vec![S::zero(); n])
    }

    pub fn identity_scale(n: usize) -> Self {
        EndoSpec::Scale(vec![S::one(); n])
    }

    pub fn len(&self) -> usize {
        match self {
            EndoSpec::Shift(v) | EndoSpec::Scale(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_identity(&self) -> bool {
        match self {
            EndoSpec::Shift(v) => v.iter().all(|c| c.is_zero()),
            EndoSpec::Scale(v) => v.iter().all(|c| c.is_one()),
        }
    }

    /// `self` after `other` (both commute, so order is immaterial).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (EndoSpec::Shift(a), EndoSpec::Shift(b)) if a.len() == b.len() => Ok(EndoSpec::Shift(
                a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect(),
            )),
            (EndoSpec::Scale(a), EndoSpec::Scale(b)) if a.len() == b.len() => Ok(EndoSpec::Scale(
                a.iter().zip(b).map(|(x, y)| x.clone() * y.clone()).collect(),
            )),
            _ => Err(Error::EndoMismatch("cannot compose shift with scale".into())),
        }
    }

    /// `self^k` for any integer `k`; scalings must be nonzero.
    pub fn power(&self, k: i64) -> Result<Self> {
        match self {
            EndoSpec::Shift(a) => Ok(EndoSpec::Shift(
                a.iter().map(|x| x.clone() * S::from_i64(k)).collect(),
            )),
            EndoSpec::Scale(a) => a
                .iter()
                .map(|x| {
                    x.powi(k)
                        .ok_or_else(|| Error::DivisionByZero("scaling factor 0".into()))
                })
                .collect::<Result<Vec<_>>>()
                .map(EndoSpec::Scale),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.power(-1)
    }

    /// Image of a Laurent polynomial.
    pub fn apply(&self, f: &MLaurent<S>) -> Result<MLaurent<S>> {
        if self.len() != f.nvars() {
            return Err(Error::Shape(format!(
                "endomorphism on {} variables applied to polynomial in {}",
                self.len(),
                f.nvars()
            )));
        }
        if self.is_identity() || f.is_constant() {
            return Ok(f.clone());
        }
        match self {
            EndoSpec::Shift(c) => {
                if let Some(var) = (0..f.nvars()).find(|&i| c[i] != S::zero() && f.min_degree_in(i).unwrap_or(0) < 0) {
                    return Err(Error::ShiftOfInverse { var });
                }
                let n = f.nvars();
                let images: Vec<MLaurent<S>> = (0..n)
                    .map(|i| {
                        &MLaurent::var(n, i).named(f.prefix())
                            + &MLaurent::constant(n, c[i].clone()).named(f.prefix())
                    })
                    .collect();
                f.compose(&images)
                    .ok_or_else(|| Error::Internal("polynomial composition failed".into()))
            }
            EndoSpec::Scale(s) => {
                let mut cache: HashMap<(usize, i32), S> = HashMap::new();
                let mut terms = Vec::with_capacity(f.len());
                for (e, coeff) in f.terms() {
                    let mut c = coeff.clone();
                    for (j, &k) in e.iter().enumerate() {
                        if k == 0 || s[j].is_one() {
                            continue;
                        }
                        let factor = match cache.get(&(j, k)) {
                            Some(x) => x.clone(),
                            None => {
                                let x = s[j].powi(k as i64).ok_or_else(|| {
                                    Error::DivisionByZero(format!("scaling of variable {}", j + 1))
                                })?;
                                cache.insert((j, k), x.clone());
                                x
                            }
                        };
                        c = c * factor;
                    }
                    terms.push((e.clone(), c));
                }
                Ok(MLaurent::from_terms(f.nvars(), terms).named(f.prefix()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{int, Rational};
    use crate::exact::QScalar;
    use num_traits::One;

    #[test]
    fn binomial_shift() {
        let h = MLaurent::<Rational>::var(1, 0);
        let sq = &h * &h;
        let img = EndoSpec::Shift(vec![int(2)]).apply(&sq).unwrap();
        let expect = MLaurent::from_terms(1, [(vec![2], int(1)), (vec![1], int(4)), (vec![0], int(4))]);
        assert_eq!(img, expect);
    }

    #[test]
    fn scale_inverse_variable() {
        let kinv = MLaurent::monomial(vec![-1], QScalar::one());
        let img = EndoSpec::Scale(vec![QScalar::q_pow(-2)]).apply(&kinv).unwrap();
        assert_eq!(img, MLaurent::monomial(vec![-1], QScalar::q_pow(2)));
    }

    #[test]
    fn shift_of_inverse_rejected() {
        let hinv = MLaurent::monomial(vec![-1], int(1));
        assert_eq!(
            EndoSpec::Shift(vec![int(1)]).apply(&hinv),
            Err(Error::ShiftOfInverse { var: 0 })
        );
    }

    #[test]
    fn powers_and_composition() {
        let s = EndoSpec::Scale(vec![QScalar::q()]);
        assert_eq!(s.power(-2).unwrap(), EndoSpec::Scale(vec![QScalar::q_pow(-2)]));
        let a = EndoSpec::Shift(vec![int(1), int(-1)]);
        assert!(a.compose(&a.inverse().unwrap()).unwrap().is_identity());
    }
}
