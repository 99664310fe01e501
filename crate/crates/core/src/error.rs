use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown generator or vertex {0:?}")]
    Unknown(String),
    #[error("path does not compose: {0}")]
    NotComposable(String),
    #[error("elements belong to different algebras")]
    MixedContexts,
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid bracket table: {0}")]
    InvalidTable(String),
    #[error("bracket table has no value for ({0}, {1})")]
    MissingEntry(String, String),
    #[error("invalid differential: {0}")]
    InvalidDifferential(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid dimension vector: {0}")]
    InvalidDimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
