use thiserror::Error;

use crate::groups::GroupViolation;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("ring of size {size} exceeds the size cap {cap}")]
    RingTooLarge { size: u128, cap: u64 },
    #[error("{0} is not invertible")]
    NotInvertible(u32),
    #[error("element index {index} out of range for ring of size {size}")]
    ElementOutOfRange { index: u64, size: u64 },
    #[error("invalid coefficient ring spec {spec:?}: {reason}")]
    ParseCoeff { spec: String, reason: String },
    #[error("invalid group spec {spec:?}: {reason}")]
    ParseGroup { spec: String, reason: String },
    #[error("invalid group table: {0}")]
    Group(#[from] GroupViolation),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{what} requires {needed} iterations, above the cap of {cap}; raise the cap to proceed")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u64,
    },
    #[error("rank computations need a field, but {0} is not one")]
    NotAField(String),
    #[error("gcd({a}, {b}) != 1")]
    NotCoprime { a: u64, b: u64 },
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
