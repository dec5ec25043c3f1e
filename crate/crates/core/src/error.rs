use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("quiver parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("inconsistent split: {0}")]
    InconsistentSplit(String),
    #[error("{0}")]
    InvalidArgument(String),
    /// A computed object violated a structural theorem; indicates a bug.
    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
