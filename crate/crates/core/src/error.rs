use thiserror::Error;

pub type Result<T> = std::result::Result<T, GraphError>;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("index {index} out of bounds for dimension {bound}")]
    IndexOutOfBounds { index: usize, bound: usize },

    #[error("value {0} is not a valid position")]
    InvalidPosition(String),

    #[error("duplicate index {0} in vector build")]
    DuplicateIndex(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has no CSC storage; build it with both formats to enable push traversal")]
    MissingCsc,

    #[error("internal contract violation: {0}")]
    Contract(&'static str),

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn check_bounds(index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(GraphError::IndexOutOfBounds { index, bound })
    }
}
