use thiserror::Error;

/// Errors raised by the decomposition algorithms and their checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A virtual sum still carried a negative multiplicity after merging.
    #[error("cancellation failure: V{dim} has net multiplicity {mult}")]
    CancellationFailure { dim: u64, mult: i64 },

    /// A computed object violated an invariant that the mathematics guarantees.
    #[error("integrity failure: {0}")]
    IntegrityFailure(String),

    #[error("resource limit: matrix dimension {size} exceeds cap {cap}")]
    ResourceLimit { size: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn integrity<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::IntegrityFailure(msg.into()))
}
