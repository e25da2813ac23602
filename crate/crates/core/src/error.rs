use thiserror::Error;

/// Errors raised by the exact-arithmetic routines.
///
/// `Domain` and `NotPrime` reject bad input. `Consistency` means an identity
/// that must hold by construction did not, which points at a bug rather than at
/// the caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} is not a prime below 2^64")]
    NotPrime(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn consistency<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}
