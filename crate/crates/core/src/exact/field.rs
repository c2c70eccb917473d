use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational numbers; the ground field of characteristic 0.
pub type Rational = BigRational;

/// An exact coefficient field.
///
/// Implementations keep values in a canonical form so that `==` decides
/// equality of field elements.
pub trait Field:
    Clone
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn inv(&self) -> Option<Self>;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    /// True when the element is a rational constant, returning it.
    fn as_rational(&self) -> Option<Rational>;

    /// `q^k` when the field contains a transcendental `q`.
    fn q_power(_k: i64) -> Option<Self> {
        None
    }

    /// Whether the printed form needs parentheses when used as a factor.
    fn is_compound(&self) -> bool {
        false
    }

    /// Integer power, negative exponents through `inv`.
    fn powi(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        Some(acc)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn is_compound(&self) -> bool {
        !self.is_integer() || self.is_negative()
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats `coeff * body` the way a human would write it, absorbing unit
/// coefficients. `body` empty means a bare constant.
pub(crate) fn fmt_term<S: Field>(coeff: &S, body: &str, first: bool) -> String {
    let mut out = String::new();
    let (sign, mag): (&str, S) = match coeff.as_rational() {
        Some(r) if r.is_negative() => ("-", -coeff.clone()),
        _ => ("+", coeff.clone()),
    };
    if first {
        if sign == "-" {
            out.push('-');
        }
    } else {
        out.push_str(if sign == "-" { " - " } else { " + " });
    }
    if body.is_empty() {
        out.push_str(&mag.to_string());
    } else if mag.is_one() {
        out.push_str(body);
    } else if mag.is_compound() {
        out.push_str(&format!("({mag})*{body}"));
    } else {
        out.push_str(&format!("{mag}*{body}"));
    }
    out
}
