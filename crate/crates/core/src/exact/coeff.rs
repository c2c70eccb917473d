//! The coefficient rings of the skew Laurent model, behind one interface.

use std::fmt::{Debug, Display};

use super::endo::EndoSpec;
use super::field::{Field, Rational};
use super::laurent::MLaurent;
use super::polyfrac::PolyFrac;
use super::qscalar::QScalar;
use crate::error::{Error, Result};

/// A commutative coefficient ring acted on by [`EndoSpec`]s.
pub trait Coefficient: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    type Scalar: Field;

    fn zero_in(nvars: usize) -> Self;
    fn one_in(nvars: usize) -> Self;
    fn scalar_in(nvars: usize, c: Self::Scalar) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Self::Scalar) -> Self;
    fn apply_endo(&self, e: &EndoSpec<Self::Scalar>) -> Result<Self>;
    /// Multiplicative inverse, where the ring supports it.
    fn inverse(&self) -> Result<Self>;
    /// The underlying Laurent polynomial when there is no denominator.
    fn as_laurent(&self) -> Option<MLaurent<Self::Scalar>>;
    fn from_laurent(p: MLaurent<Self::Scalar>) -> Self;
}

impl Coefficient for PolyFrac<Rational> {
    type Scalar = Rational;

    fn zero_in(nvars: usize) -> Self {
        PolyFrac::zero(nvars).named("h")
    }
    fn one_in(nvars: usize) -> Self {
        PolyFrac::one(nvars).named("h")
    }
    fn scalar_in(nvars: usize, c: Rational) -> Self {
        PolyFrac::constant(nvars, c).named("h")
    }
    fn nvars(&self) -> usize {
        PolyFrac::nvars(self)
    }
    fn is_zero(&self) -> bool {
        PolyFrac::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.numerator().is_one() && self.denominator().is_one()
    }
    fn plus(&self, o: &Self) -> Self {
        PolyFrac::plus(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        PolyFrac::minus(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        PolyFrac::times(self, o)
    }
    fn negated(&self) -> Self {
        PolyFrac::negated(self)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn apply_endo(&self, e: &EndoSpec<Rational>) -> Result<Self> {
        PolyFrac::apply_endo(self, e)
    }
    fn inverse(&self) -> Result<Self> {
        PolyFrac::inverse(self)
    }
    fn as_laurent(&self) -> Option<MLaurent<Rational>> {
        self.as_poly().cloned()
    }
    fn from_laurent(p: MLaurent<Rational>) -> Self {
        PolyFrac::from_poly(p)
    }
}

impl Coefficient for MLaurent<QScalar> {
    type Scalar = QScalar;

    fn zero_in(nvars: usize) -> Self {
        MLaurent::zero(nvars).named("K")
    }
    fn one_in(nvars: usize) -> Self {
        MLaurent::one(nvars).named("K")
    }
    fn scalar_in(nvars: usize, c: QScalar) -> Self {
        MLaurent::constant(nvars, c).named("K")
    }
    fn nvars(&self) -> usize {
        MLaurent::nvars(self)
    }
    fn is_zero(&self) -> bool {
        MLaurent::is_zero(self)
    }
    fn is_one(&self) -> bool {
        MLaurent::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &QScalar) -> Self {
        self.scale(c)
    }
    fn apply_endo(&self, e: &EndoSpec<QScalar>) -> Result<Self> {
        e.apply(self)
    }
    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of 0".into()));
        }
        self.monomial_inverse()
            .ok_or_else(|| Error::NotUnitMonomial(format!("coefficient {self} is not a monomial")))
    }
    fn as_laurent(&self) -> Option<MLaurent<QScalar>> {
        Some(self.clone())
    }
    fn from_laurent(p: MLaurent<QScalar>) -> Self {
        p
    }
}
