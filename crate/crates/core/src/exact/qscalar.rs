//! The rational function field Q(q) with q transcendental.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};
use super::upoly::UPoly;

/// A reduced fraction of integer polynomials in `q`.
///
/// Canonical form: `gcd(numerator, denominator) = 1` in Z[q] and the
/// denominator has a positive leading coefficient. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: UPoly,
    den: UPoly,
}

impl QScalar {
    /// Builds `num / den`, reducing to canonical form.
    pub fn new(num: UPoly, den: UPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den))
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn integer(v: i64) -> Self {
        QScalar {
            num: UPoly::constant(BigInt::from(v)),
            den: UPoly::one(),
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            QScalar {
                num: UPoly::monomial(BigInt::one(), k as usize),
                den: UPoly::one(),
            }
        } else {
            QScalar {
                num: UPoly::one(),
                den: UPoly::monomial(BigInt::one(), k.unsigned_abs() as usize),
            }
        }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Symmetric quantum integer `[m]_{q^d} = (q^{dm} - q^{-dm}) / (q^d - q^{-d})`.
    pub fn quantum_integer(m: i64, d: i64) -> Self {
        let num = QScalar::q_pow(d * m) - QScalar::q_pow(-d * m);
        let den = QScalar::q_pow(d) - QScalar::q_pow(-d);
        num / den
    }

    /// If this is `c * q^k` with rational `c`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let kn = self.num.valuation() as i64;
        let kd = self.den.valuation() as i64;
        Some((
            Rational::new(self.num.lc(), self.den.lc()),
            kn - kd,
        ))
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return QScalar {
                num: UPoly::zero(),
                den: UPoly::one(),
            };
        }
        // common powers of q
        let v = num.valuation().min(den.valuation());
        let (mut num, mut den) = if v > 0 {
            (num.shift_down(v), den.shift_down(v))
        } else {
            (num, den)
        };
        if den.is_monomial() {
            // only q-powers and integer content can be shared
            let g = num.content().gcd(&den.content());
            if !g.is_one() {
                num = num.div_scalar(&g);
                den = den.div_scalar(&g);
            }
        } else {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QScalar { num, den }
    }

    fn denominators_equal(&self, other: &Self) -> bool {
        self.den == other.den
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar {
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }
}

impl Add for QScalar {
    type Output = QScalar;
    fn add(self, rhs: QScalar) -> QScalar {
        &self + &rhs
    }
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.denominators_equal(rhs) {
            return QScalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        QScalar::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Sub for QScalar {
    type Output = QScalar;
    fn sub(self, rhs: QScalar) -> QScalar {
        &self + &(-rhs)
    }
}

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Mul for QScalar {
    type Output = QScalar;
    fn mul(self, rhs: QScalar) -> QScalar {
        &self * &rhs
    }
}

impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if rhs.num.is_one() && rhs.den.is_one() {
            return self.clone();
        }
        if self.num.is_one() && self.den.is_one() {
            return rhs.clone();
        }
        QScalar::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for QScalar {
    type Output = QScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    /// Panics on division by zero; use [`Field::inv`] for a checked inverse.
    fn div(self, rhs: QScalar) -> QScalar {
        let inv = rhs.inv().expect("QScalar division by zero");
        self * inv
    }
}

impl Field for QScalar {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(QScalar::reduce(self.den.clone(), self.num.clone()))
    }

    fn from_rational(r: &Rational) -> Self {
        QScalar::reduce(
            UPoly::constant(r.numer().clone()),
            UPoly::constant(r.denom().clone()),
        )
    }

    fn as_rational(&self) -> Option<Rational> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            let n = self.num.coeffs().first().cloned().unwrap_or_default();
            Some(Rational::new(n, self.den.lc()))
        } else {
            None
        }
    }

    fn q_power(k: i64) -> Option<Self> {
        Some(QScalar::q_pow(k))
    }

    fn is_compound(&self) -> bool {
        self.as_rational().is_none_or(|r| !r.is_integer())
            && !matches!(self.as_monomial(), Some((c, _)) if c.is_one())
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_monomial() {
            let shift = -(self.den.valuation() as i64);
            let c = self.den.lc();
            let body = self.num.fmt_shifted(shift);
            if c.is_one() {
                f.write_str(&body)
            } else if self.num.term_count() == 1 {
                write!(f, "{body}/{c}")
            } else {
                write!(f, "({body})/{c}")
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> QScalar {
        QScalar::new(UPoly::from_i64s(cs), UPoly::one()).unwrap()
    }

    #[test]
    fn cancellation() {
        // (q-1)/(q+1) * (q+1) = q-1
        let a = QScalar::new(UPoly::from_i64s(&[-1, 1]), UPoly::from_i64s(&[1, 1])).unwrap();
        assert_eq!(a * poly(&[1, 1]), poly(&[-1, 1]));
    }

    #[test]
    fn q_powers_invert() {
        let q = QScalar::q();
        assert_eq!(q.inv().unwrap(), QScalar::q_pow(-1));
        assert_eq!(QScalar::q_pow(3) * QScalar::q_pow(-5), QScalar::q_pow(-2));
        assert_eq!(QScalar::q_pow(-2).as_monomial(), Some((Rational::one(), -2)));
    }

    #[test]
    fn quantum_integer_two() {
        // [2]_q = q + q^-1
        assert_eq!(
            QScalar::quantum_integer(2, 1),
            QScalar::q() + QScalar::q_pow(-1)
        );
        assert_eq!(QScalar::quantum_integer(2, 1).to_string(), "q + q^-1");
    }

    #[test]
    fn canonical_sign() {
        let a = QScalar::new(UPoly::from_i64s(&[1]), UPoly::from_i64s(&[1, -1])).unwrap();
        assert!(a.denominator().lc().is_positive());
        let b = QScalar::new(UPoly::from_i64s(&[-1]), UPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(QScalar::new(UPoly::one(), UPoly::zero()).is_none());
        assert!(QScalar::zero().inv().is_none());
    }
}
