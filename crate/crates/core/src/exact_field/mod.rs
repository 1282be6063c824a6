//! Exact scalars: arbitrary-precision rationals, the quadratic extensions
//! ℚ(√m), and small dense matrices with a fraction-free solver.

mod matrix;
mod quad;
mod rational;

pub use matrix::{linear_solve, ExactMatrix, Inertia, LinearSolution};
pub use quad::{quad_mul, QuadExt};
pub use rational::{q, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("malformed quadratic-extension element {0:?}")]
    MalformedQuad(String),
    #[error("radicand must be positive, got {0}")]
    NonPositiveRadicand(Rational),
    #[error("incompatible fields Q(sqrt({left})) and Q(sqrt({right}))")]
    IncompatibleFields { left: Rational, right: Rational },
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// True when every entry is zero.
pub(crate) fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}
