use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group-ring operands live in different groups")]
    GroupMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("no valid parameters: {0}")]
    NoValidParameters(String),
    #[error("invalid arity: {0}")]
    InvalidArity(String),
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error in `{field}`: {msg}")]
    Parse { field: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
