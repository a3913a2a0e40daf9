use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Inputs violate a precondition (dimension/rank mismatch, empty operator, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// An expression failed to parse; carries line/column of the offending token.
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A certified precondition is missing (e.g. symbol invertibility was not
    /// established before a stage that relies on it).
    #[error("uncertified prerequisite: {0}")]
    Uncertified(String),

    /// A grid is too coarse for the requested finite-difference stencil.
    #[error("grid too coarse: {0}")]
    RefineGrid(String),

    /// The fiber truncation radius is too small for the requested accuracy.
    #[error("fiber radius too small: {0}")]
    IncreaseRadius(String),

    /// An internal invariant failed; indicates a construction bug.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
