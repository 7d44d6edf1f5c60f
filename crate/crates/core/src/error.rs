use thiserror::Error;

/// Errors raised by the field, geometry and spectral routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("characteristic {0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{ell} exceeds the configured ceiling {limit}")]
    FieldTooLarge { p: u32, ell: u32, limit: u64 },
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    BadModulus(Vec<u32>),
    #[error("element index {index} is out of range for a field of order {q}")]
    ElementOutOfRange { index: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scan of {needed} terms exceeds the universe ceiling {limit}")]
    ScanTooLarge { needed: u128, limit: u64 },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("empty point set")]
    EmptySet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("numerical drift: {0}")]
    NumericalDrift(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
