use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("point or data outside the operator's domain: {0}")]
    OutOfDomain(String),
    #[error("not exactly divisible: {0}")]
    NotDivisible(String),
    #[error("form degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("boundary traces disagree on an interface: {0}")]
    IncompatibleTraces(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
