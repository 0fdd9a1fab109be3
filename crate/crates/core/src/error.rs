use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("exponent overflow at line {line}, column {column} (limit 2^31-1)")]
    ExponentOverflow { line: usize, column: usize },

    #[error("elimination resource cap exceeded ({terms} intermediate terms, cap {cap})")]
    ResourceCap { terms: usize, cap: usize },

    #[error("invalid pertinent family: {0}")]
    InvalidFamily(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("floating-point overflow: {0}")]
    Overflow(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
