use thiserror::Error;

/// Errors shared across the numerical modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature failed to converge: {0}")]
    Quadrature(String),

    #[error("no root bracketed: {0}")]
    NoRoot(String),

    #[error("iteration failed to converge: {0}")]
    Convergence(String),

    #[error("basis mismatch: expected {expected}, got {got}")]
    BasisMismatch { expected: String, got: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("missing coefficients: {0}")]
    MissingCoefficients(String),

    #[error("quartic form is not coercive (A(w) <= 0)")]
    NonCoercive,

    #[error("eigenvalue condition not satisfied: residual {0:e}")]
    ConditionNotSatisfied(f64),

    #[error("dominance certificate failed: {0}")]
    Certificate(String),

    #[error("division by zero: radial profile vanishes at p = {0}")]
    ProfileZero(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
