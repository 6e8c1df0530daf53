use thiserror::Error;

/// Errors raised by graph, torus and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid group action: {0}")]
    InvalidGroup(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
