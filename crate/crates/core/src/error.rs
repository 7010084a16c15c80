use thiserror::Error;

/// Failure categories shared by every module.
///
/// The categories map onto CLI exit codes: `Parse` is a malformed request,
/// `Domain` a violated precondition, `ResourceGuard` a configured cap, and
/// `NotCertified` an enclosure that could not be certified at the requested
/// precision (callers retry with more precision or more terms).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource guard tripped: {0}")]
    ResourceGuard(String),
    #[error("could not certify: {0}")]
    NotCertified(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn guard(msg: impl Into<String>) -> Self {
        Error::ResourceGuard(msg.into())
    }

    pub(crate) fn uncertified(msg: impl Into<String>) -> Self {
        Error::NotCertified(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
