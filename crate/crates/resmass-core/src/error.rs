use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the exact kernel and the samplers.
///
/// Everything except [`Error::Internal`] is a precondition or input problem;
/// `Internal` signals a violated kernel invariant and is never expected on
/// valid builds.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty support")]
    EmptySupport,

    #[error("not in positive orthant: point {index} has a negative coordinate {coord}")]
    NotInPositiveOrthant { index: usize, coord: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("theta region unbounded: no generator supported on axis {axis} alone")]
    NotConvenient { axis: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("identically zero component {component}")]
    ZeroComponent { component: usize },

    #[error("nonvanishing at base point: component {component} has a nonzero constant term")]
    NonvanishingAtBasePoint { component: usize },

    #[error("mixed mass did not stabilize after {max_level} regularization levels")]
    DidNotStabilize { max_level: u32 },

    #[error("measure-zero assumption violated: {discarded} of {total} samples hit the zero set")]
    MeasureZeroViolated { discarded: usize, total: usize },

    #[error("invalid sampling plan: {0}")]
    InvalidPlan(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violation: {0}")]
    Internal(String),
}

impl Error {
    /// True for invariant violations that indicate a kernel bug rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
