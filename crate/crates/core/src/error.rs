use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("homogeneous pair ({0}, {1}) does not name a point")]
    ZeroPoint(f64, f64),
    #[error("degenerate Möbius matrix (det = {0})")]
    DegenerateMatrix(f64),
    #[error("cross-ratio is 0/0 for this quadruple")]
    IndeterminateCrossRatio,
    #[error("anchor points of the normalization coincide")]
    DegenerateAnchor,
    #[error("value {0} lies outside the domain [0, 1]")]
    Domain(f64),
    #[error("lift step of {step} at sample {index} is at least 1/4 turn")]
    LiftStepTooLarge { index: usize, step: f64 },
    #[error("point is off the unit circle (|z| - 1 = {0:e})")]
    OffCircle(f64),
    #[error("determinant {0} is not 1")]
    DetNotOne(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid chart point: {0}")]
    InvalidChart(String),
    #[error("bad triple index {0:?} for n = {1}")]
    BadIndex([usize; 3], usize),
    #[error("chart point within {margin:e} of a seam (distance {distance:e})")]
    SeamTooClose { distance: f64, margin: f64 },
    #[error("matrix has a non-finite entry")]
    NonFiniteEntry,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("ideal points coincide")]
    CoincidentIdealPoints,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("could not draw a valid sample after {0} attempts")]
    SamplingExhausted(usize),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

impl Error {
    /// True for failures of a numerical precondition (as opposed to malformed input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::IndeterminateCrossRatio
                | Error::DegenerateAnchor
                | Error::LiftStepTooLarge { .. }
                | Error::OffCircle(_)
                | Error::DetNotOne(_)
                | Error::SeamTooClose { .. }
                | Error::NonFiniteEntry
                | Error::CoincidentIdealPoints
                | Error::SamplingExhausted(_)
                | Error::DegenerateMatrix(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
