//! Exact arithmetic substrate: Gaussian rationals, univariate polynomials,
//! rational functions and dense linear algebra over Q(i).
//!
//! Everything in this crate is exact; no floating point enters at any stage.
//! Values are immutable after construction and all operations are pure
//! functions, so concurrent use needs no coordination.

pub mod matrix;
pub mod polynomial;
pub mod ratfunc;
pub mod rational;

pub use matrix::ExactMatrix;
pub use polynomial::Polynomial;
pub use ratfunc::{PrincipalPart, RationalFunction};
pub use rational::GaussianRational;

/// Errors surfaced by the exact layer.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero in exact arithmetic")]
    DivisionByZero,
    #[error("evaluation at a pole: {0} has a pole at the requested point")]
    PoleInEvaluation(String),
    #[error("matrix dimensions mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cannot parse {input:?} as an exact Gaussian rational: {reason}")]
    Parse { input: String, reason: String },
}
