//! Exact verification of generalized Weyl algebra realizations of
//! Kac-Moody Borel algebras and their quantizations.

// Matrix code indexes several arrays by the same loop variable.
#![allow(clippy::needless_range_loop)]

pub mod biproduct;
pub mod cartan;
pub mod cli;
pub mod datum;
pub mod error;
pub mod exact;
pub mod morphisms;
pub mod ncpoly;
pub mod report;
pub mod skew;

pub use error::{Error, Result};
