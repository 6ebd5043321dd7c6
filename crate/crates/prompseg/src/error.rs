//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by trajectory generation, segmentation, learning and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its documented domain (range, count, sign, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An input value or shape violated an operation's contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Fewer significant peaks were found than requested clusters.
    #[error("insufficient peaks: found {found}, need at least {requested}")]
    InsufficientPeaks { found: usize, requested: usize },

    /// All feature rows coincide, so no kernel scale can be inferred.
    #[error("degenerate scale: all pairwise feature distances are zero")]
    DegenerateScale,

    /// An iterative numeric routine failed to converge or a factorization broke down.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
