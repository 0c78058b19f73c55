use thiserror::Error;

/// Errors raised by the solvers and their I/O layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordError {
    /// An input violated an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Malformed input (JSON, rational strings, unknown identifiers).
    #[error("parse error: {0}")]
    Parse(String),
    /// A guarantee the algorithms rely on did not hold. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl ChordError {
    pub fn precondition(msg: impl Into<String>) -> Self {
        ChordError::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        ChordError::Internal(msg.into())
    }

    /// Process exit status used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            ChordError::Precondition(_) | ChordError::Parse(_) => 2,
            ChordError::Internal(_) => 1,
        }
    }
}

pub type Result<T, E = ChordError> = std::result::Result<T, E>;
