use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request would exceed a configured size limit.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Redundant results disagree, or a claimed result does not check out.
    #[error("validation error: {0}")]
    Validation(String),

    /// A claimed bound contradicts a known exact van der Waerden number.
    #[error("soundness error: {0}")]
    Soundness(String),

    /// A checkpoint or result file is damaged.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
