//! Exact arithmetic kernel.

mod coeff;
mod endo;
mod field;
mod jacobian;
mod laurent;
mod linalg;
mod polyfrac;
mod qscalar;
mod upoly;

pub use coeff::Coefficient;
pub use endo::EndoSpec;
pub use field::{int, rat, Field, Rational};
pub(crate) use field::fmt_term;
pub use jacobian::{determinant, jacobian, PolyMatrix};
pub use laurent::{Exponent, MLaurent};
pub use linalg::solve_linear;
pub use polyfrac::PolyFrac;
pub use qscalar::QScalar;
pub use upoly::UPoly;

pub use num_traits::{One, Zero};

/// Classical coefficients: rational functions in `h_1..h_n`.
pub type ClassicalCoeff = PolyFrac<Rational>;
/// Quantum coefficients: Laurent polynomials in `K_1..K_n` over Q(q).
pub type QuantumCoeff = MLaurent<QScalar>;
