use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph: {0}")]
    Structure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("{0}")]
    Identity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn structure(msg: impl Into<String>) -> Error {
    Error::Structure(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
