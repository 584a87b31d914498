//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while building configurations or running
/// the predictors / the linear-algebra oracle.
#[derive(Debug, Error)]
pub enum Error {
    /// An input vector violates the shape its type demands (monotonicity,
    /// positivity, repetition limits, ...).
    #[error("invalid vector: {0}")]
    InvalidVector(String),

    /// A sequence was claimed to be the first difference of the Hilbert
    /// function of reduced points in the plane, but is not.
    #[error("not the difference Hilbert function of points in the plane: {0}")]
    NotPointHilbertFunction(String),

    /// The requested value is outside the range this crate knows closed
    /// forms or tables for.
    #[error("unsupported request: {0}")]
    Unsupported(String),

    /// Randomized sampling kept producing degenerate geometry and ran out
    /// of retries.
    #[error("degenerate sample after {attempts} attempts: {detail}")]
    Degenerate {
        /// How many draws were made before giving up.
        attempts: u32,
        /// What kept going wrong.
        detail: String,
    },

    /// An internal cross-check failed; this indicates a bug or an
    /// arithmetic-mode failure that could not be repaired.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    /// `reproduce` was asked for an example id that does not exist.
    #[error("unknown example id: {0}")]
    UnknownExample(String),

    /// Command-line usage error (bad flag combination, unparsable vector).
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
