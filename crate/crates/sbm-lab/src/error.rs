use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Two inputs that must agree on a dimension (node count, block count) do not.
    #[error("dimension mismatch: {what} expects {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// A partition violates its invariants (empty block, out-of-range id, ...).
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A model violates its invariants (size/matrix mismatch, negative density, ...).
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// An operation's precondition does not hold for the given arguments.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed text input (edge list, partition line, CSV).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An operation that requires at least one record got none.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
