use thiserror::Error;

/// Errors produced by the certificate pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("axis {axis} out of range for dimension {n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("degree {needed} exceeds available moment degree {available}")]
    DegreeExceeded { needed: u32, available: u32 },

    #[error("localizing weight must be a real polynomial")]
    NonRealWeight,

    #[error("moment value for {alpha:?} is not finite")]
    NonFiniteMoment { alpha: Vec<u32> },

    #[error("moment sequence incomplete: missing {alpha:?}")]
    IncompleteMoments { alpha: Vec<u32> },

    #[error("moment {alpha:?} overflows f64 (log magnitude {log_abs})")]
    MomentOverflow { alpha: Vec<u32>, log_abs: f64 },

    #[error("quadrature did not converge: estimate {estimate}, last change {change}")]
    QuadratureNotConverged { estimate: f64, change: f64 },

    #[error("operation not supported for {0}")]
    UnsupportedKind(&'static str),

    #[error("invalid oracle: {0}")]
    InvalidOracle(String),

    #[error("moment matrix is not PSD: min eigenvalue {min_eigenvalue} < -{tol}")]
    NotPsd { min_eigenvalue: f64, tol: f64 },

    #[error("missing moment for k = {k}")]
    MissingMoment { k: usize },

    #[error("even moment m_{{2k}} is not positive at k = {k}")]
    NonPositiveEvenMoment { k: usize },

    #[error("too few terms: need at least {needed}, got {got}")]
    TooFewTerms { needed: usize, got: usize },

    #[error("support experiment requires an atomic oracle")]
    NonAtomicOracle,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
