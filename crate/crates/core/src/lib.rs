//! Exact Lévy, Kolmogorov and Prohorov distances between probability
//! measures on the real line and on finite metric spaces.
//!
//! All arithmetic is generic over [`Scalar`]; the aliases below fix it to
//! arbitrary-precision rationals, which is what the binary uses.

pub mod audit;
pub mod cli;
pub mod convergence;
pub mod error;
mod frontier;
pub mod io;
pub mod levy;
pub mod measures;
pub mod prohorov;
pub mod scalar;
pub mod transport;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type Measure = measures::DiscreteMeasure<Rational>;
pub type Cdf = measures::PiecewiseCdf<Rational>;
pub type Distribution = measures::Law<Rational>;
