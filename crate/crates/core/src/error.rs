use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{n} is outside the range supported by exact primality testing (< 2^64)")]
    OutOfSupportedRange { n: String },

    #[error("segment of {requested} elements exceeds capacity {capacity}")]
    CapacityExceeded { requested: u64, capacity: u64 },

    #[error("invalid range [{lo}, {hi}): {reason}")]
    InvalidRange {
        lo: u64,
        hi: u64,
        reason: &'static str,
    },

    #[error("could not fully factor {n} within the effort budget")]
    FactorizationFailed { n: String },

    #[error("{what} exceeds the configured budget")]
    OutOfBudget { what: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported E-bound: {0}")]
    UnsupportedEBound(String),

    #[error("{0} is not prime")]
    NotPrime(u64),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
