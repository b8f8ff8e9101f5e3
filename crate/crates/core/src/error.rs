use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed set: {0}")]
    MalformedSet(String),
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("invalid container at {path}: {msg}")]
    InvalidContainer { path: String, msg: String },
    #[error("invalid tree at {path}: {msg}")]
    InvalidTree { path: String, msg: String },
    #[error("missing algebra entry for {elem} at index {index}")]
    MissingAlgebraEntry { index: String, elem: String },
    #[error("step failed at {path}: {msg}")]
    Step { path: String, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad encoding: {0}")]
    Encoding(String),
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error("invalid coalgebra: {0}")]
    InvalidCoalgebra(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
