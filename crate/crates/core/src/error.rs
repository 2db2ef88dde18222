use thiserror::Error;

use crate::sequences::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivideByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index {index} out of range for family {family}")]
    IndexOutOfRange { family: Family, index: i64 },
    #[error("{m}/{n} is not in lowest terms")]
    NotIrreducible { m: u64, n: u64 },
    #[error("fraction {m}/{n} is not in (0, 1)")]
    OutOfRange { m: u64, n: u64 },
    #[error("floating-point precision exceeded: {0}")]
    PrecisionExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
