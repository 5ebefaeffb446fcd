use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpcError {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("unspecified pair ({0}, {1})")]
    UnspecifiedPair(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("experimental feature: {0}")]
    Experimental(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, DpcError>;
