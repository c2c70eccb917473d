//! Fractions of multivariate polynomials in canonical form.

use std::fmt;

use super::endo::EndoSpec;
use super::field::Field;
use super::laurent::MLaurent;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in lex order.
///
/// Equality of fractions is therefore structural equality.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyFrac<S: Field> {
    num: MLaurent<S>,
    den: MLaurent<S>,
}

impl<S: Field> PolyFrac<S> {
    pub fn new(num: MLaurent<S>, den: MLaurent<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(format!("fraction ({num})/0")));
        }
        if !num.is_polynomial() || !den.is_polynomial() {
            return Err(Error::Shape("fraction parts must be polynomials".into()));
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: MLaurent<S>) -> Self {
        let n = p.nvars();
        let prefix = p.prefix();
        PolyFrac {
            num: p,
            den: MLaurent::one(n).named(prefix),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MLaurent::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MLaurent::one(nvars))
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::from_poly(MLaurent::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MLaurent::var(nvars, i))
    }

    pub fn named(self, prefix: &'static str) -> Self {
        PolyFrac {
            num: self.num.named(prefix),
            den: self.den.named(prefix),
        }
    }

    pub fn numerator(&self) -> &MLaurent<S> {
        &self.num
    }

    pub fn denominator(&self) -> &MLaurent<S> {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial if the denominator is 1.
    pub fn as_poly(&self) -> Option<&MLaurent<S>> {
        self.den.is_one().then_some(&self.num)
    }

    fn canonical(num: MLaurent<S>, den: MLaurent<S>) -> Self {
        let prefix = num.prefix();
        if num.is_zero() {
            return Self::zero(num.nvars()).named(prefix);
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            return Self::from_poly(num.scale(&inv));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        if lc.is_one() {
            PolyFrac { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            PolyFrac {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(&self.num + &o.num);
            }
            return Self::canonical(&self.num + &o.num, self.den.clone());
        }
        Self::canonical(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn negated(&self) -> Self {
        PolyFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars()).named(self.num.prefix());
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(&self.num * &o.num);
        }
        // cross-cancel before multiplying so the result needs no further gcd
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = o.den.div_exact(&g1).expect("gcd divides");
        let c = o.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Self::canonical(&a * &c, &b * &d)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars()).named(self.num.prefix());
        }
        PolyFrac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of 0".into()));
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn divide(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero(format!("({self}) / 0")));
        }
        Ok(self.times(&o.inverse()?))
    }

    pub fn apply_endo(&self, e: &EndoSpec<S>) -> Result<Self> {
        let num = e.apply(&self.num)?;
        if self.den.is_one() {
            return Ok(Self::from_poly(num));
        }
        let den = e.apply(&self.den)?;
        // automorphisms preserve coprimality; only the normalization can move
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.inv().expect("nonzero");
        Ok(PolyFrac {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }
}

impl<S: Field> fmt::Display for PolyFrac<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MLaurent<S>| {
            if p.len() > 1 || p.constant_value().is_some_and(|c| c.is_compound()) {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<S: Field> fmt::Debug for PolyFrac<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFrac({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{int, rat, Rational};

    type F = PolyFrac<Rational>;

    fn h(i: usize) -> F {
        F::var(2, i)
    }

    fn c(v: Rational) -> F {
        F::constant(2, v)
    }

    #[test]
    fn sum_of_fractions() {
        // 1/h1 + 1/h2 = (h1+h2)/(h1 h2)
        let s = h(0).inverse().unwrap().plus(&h(1).inverse().unwrap());
        let expect = F::new(
            (&h(0).num + &h(1).num).clone(),
            &h(0).num * &h(1).num,
        )
        .unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn cancellation_to_polynomial() {
        let p = h(0).times(&h(0)).minus(&c(int(1)));
        let q = h(0).minus(&c(int(1)));
        assert_eq!(p.divide(&q).unwrap(), h(0).plus(&c(int(1))));
    }

    #[test]
    fn monic_denominator() {
        let f = F::new(MLaurent::one(2), h(0).scale(&rat(-2, 3)).num).unwrap();
        assert!(f.denominator().leading().unwrap().1 == &int(1));
        assert_eq!(f.to_string(), "(-3/2)/x1");
    }

    #[test]
    fn shift_of_fraction() {
        let f = h(0).inverse().unwrap();
        let g = f.apply_endo(&EndoSpec::Shift(vec![int(-2), int(0)])).unwrap();
        assert_eq!(g, h(0).minus(&c(int(2))).inverse().unwrap());
    }

    #[test]
    fn division_by_zero_named() {
        assert!(matches!(h(0).divide(&F::zero(2)), Err(Error::DivisionByZero(_))));
    }
}
