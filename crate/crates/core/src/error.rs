use thiserror::Error;

/// Errors raised while validating inputs to the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("breakpoints and values must be non-empty and of equal length (got {breakpoints} breakpoints, {values} values)")]
    LengthMismatch { breakpoints: usize, values: usize },

    #[error("breakpoints must be strictly increasing (violated at index {index})")]
    UnsortedBreakpoints { index: usize },

    #[error("angle {0} is outside [-pi, pi]")]
    AngleOutOfRange(f64),

    #[error("non-finite number at index {0}")]
    NonFinite(usize),

    #[error("invalid arc (start {start}, length {length})")]
    InvalidArc { start: f64, length: f64 },

    #[error("arc has zero measure")]
    ZeroMeasureArc,

    #[error("p = {0} must satisfy 1 <= p < inf")]
    POutOfRange(f64),

    #[error("lambda = {0} is outside the admissible range")]
    LambdaOutOfRange(f64),

    #[error("eps = {eps} must satisfy 0 < eps < {bound}")]
    EpsOutOfRange { eps: f64, bound: f64 },

    #[error("truncation index {0} is below 16")]
    NTooSmall(usize),

    #[error("blocks {0} and {1} of the shifted function overlap")]
    OverlapDetected(usize, usize),

    #[error("arc ({inf}, {sup}) is not contained in (0, 1/4]")]
    ArcOutsideDomain { inf: f64, sup: f64 },

    #[error("t = {0} must satisfy 0 < t < 1/16")]
    TOutOfRange(f64),

    #[error("y = {0} must satisfy y > 1")]
    YOutOfRange(f64),

    #[error("indices ({n0}, {n1}) must satisfy 16 <= n0 < n1")]
    IndexOutOfRange { n0: u64, n1: u64 },

    #[error("grid refinement {0} must be at least 2")]
    InvalidRefinement(usize),

    #[error("tolerance {0} is outside the supported range")]
    InvalidTolerance(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
