use thiserror::Error;

use crate::invariants::PolarIdentityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid characteristic {0}: expected 0 or a prime")]
    InvalidCharacteristic(u64),

    #[error("extensions of degree {0} over the rationals are not supported")]
    UnsupportedExtension(usize),

    #[error("zero input")]
    ZeroInput,

    #[error("not supported: {0}")]
    NotSupported(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("not a regular parameter: order {0} (expected 1)")]
    NotRegularParameter(u32),

    #[error("the direction divides the series")]
    DegenerateDirection,

    #[error("linear change is not invertible")]
    NotInvertible,

    #[error("input is not reduced (repeated factor through the origin)")]
    NotReduced,

    #[error("input does not pass through the origin")]
    NotThroughOrigin,

    #[error("series has {0} branches, an irreducible series is required")]
    NotIrreducible(usize),

    #[error("common component through the origin: intersection is infinite")]
    InfiniteIntersection,

    #[error("resultant oracle failed: {0}")]
    OracleFailure(String),

    #[error("blowup depth exceeded the guard of {0}")]
    DepthExceeded(usize),

    #[error("hypothesis failed: {reason}")]
    HypothesisFailed {
        reason: String,
        partial: Option<Box<PolarIdentityReport>>,
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn hypothesis(reason: impl Into<String>) -> Self {
        Error::HypothesisFailed {
            reason: reason.into(),
            partial: None,
        }
    }
}
