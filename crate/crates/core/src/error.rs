//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the library.
///
/// The distinction matters to callers: `InvalidInput` means a precondition
/// was violated (the caller must change the request), while `Precision`
/// means the request was valid but could not be answered to the promised
/// accuracy (a numeric limitation, never a silently wrong value).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A documented precondition does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The computation cannot meet its accuracy contract.
    #[error("precision failure: {0}")]
    Precision(String),
    /// A quantity exists mathematically but this implementation cannot produce it.
    #[error("unavailable: {0}")]
    Unavailable(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
