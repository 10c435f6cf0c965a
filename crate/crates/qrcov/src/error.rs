//! Crate-wide error type.
//!
//! Variants split into two families that the CLI maps onto exit codes:
//! input/construction problems (bad dimensions, malformed files, failed
//! basis checks) and invariant violations detected mid-computation
//! (identities that provably hold but came out numerically broken).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |m - m^†| entry = {deviation:.3e}, tolerance {tolerance:.1e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace deviates from 1 by {0:.3e}")]
    NotUnitTrace(f64),

    #[error("operator is not positive semidefinite (smallest eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),

    #[error("state vector norm deviates from 1 by {0:.3e}")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max |U^†U - 1| entry = {0:.3e})")]
    NotUnitary(f64),

    #[error("basis is not orthonormal (max Gram deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("observable sets are not maximally unbiased (max overlap deviation {0:.3e})")]
    NotUnbiased(f64),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("probability leak {leaked:.3e} exceeds threshold {threshold:.3e}")]
    LeakAboveThreshold { leaked: f64, threshold: f64 },

    #[error("resource value {0:.3e} is negative beyond tolerance")]
    NegativeQuantity(f64),

    #[error("internal consistency violation: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI uses for this error: 2 for input problems,
    /// 1 for invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LeakAboveThreshold { .. }
            | Error::NegativeQuantity(_)
            | Error::Inconsistency(_) => 1,
            _ => 2,
        }
    }
}
