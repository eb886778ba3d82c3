//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input bytes are not a recognizable PGM stream (bad magic, garbled header).
    #[error("malformed image format: {0}")]
    Format(String),

    /// Header-declared pixel count disagrees with the payload actually present.
    #[error("truncated image payload: expected {expected} samples, found {actual}")]
    Truncated { expected: usize, actual: usize },

    /// Syntactically valid input the decoder deliberately does not handle.
    #[error("unsupported image variant: {0}")]
    Unsupported(String),

    /// Argument outside its documented domain.
    #[error("invalid parameter: {0}")]
    Param(String),

    /// An operation that needs at least one foreground pixel got none.
    #[error("input mask has no foreground pixels")]
    EmptyInput,

    /// Too few box sizes to fit a log-log line.
    #[error("insufficient scales for dimension fit: {available} available, 3 required")]
    InsufficientScales { available: usize },

    /// Log-log abscissae carry no variance, so no slope exists.
    #[error("degenerate dimension fit: zero variance in scale axis")]
    DegenerateFit,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
