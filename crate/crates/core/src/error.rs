use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that does not even have the right shape (non-square table,
    /// out-of-range entry, unparsable text).
    #[error("malformed input: {0}")]
    Malformed(String),
    /// Well-formed input that violates an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An explicit size guard refused the computation. Guards are parameters,
    /// so callers can raise `limit` and retry.
    #[error("{what} exceeds guard ({requested} > {limit})")]
    GuardExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    /// A floating-point sign claim could not be certified under the margin policy.
    #[error("indeterminate precision: {0}")]
    IndeterminatePrecision(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Guard,
    Indeterminate,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Malformed(_) | Error::InvalidArgument(_) => ErrorKind::Input,
            Error::GuardExceeded { .. } => ErrorKind::Guard,
            Error::IndeterminatePrecision(_) => ErrorKind::Indeterminate,
        }
    }

    pub(crate) fn guard(what: &'static str, requested: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::GuardExceeded {
            what,
            requested: requested.into(),
            limit: limit.into(),
        }
    }
}
