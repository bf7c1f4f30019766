use thiserror::Error;

/// Errors raised by the geometry, transform, and quadric routines.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    /// An exponent fell outside the double-precision exponential range guard.
    #[error("exponent {0} outside the guarded range |x| <= 700")]
    Overflow(f64),

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),

    /// The quadric contains a line or is degenerate: rk(A|b) < n.
    #[error("unsupported quadric: {0}")]
    UnsupportedQuadric(String),

    #[error("quadric has no real points")]
    EmptyQuadric,

    #[error("quadric consists of a single point")]
    PointQuadric,

    #[error("parameter outside the domain of the parameterization")]
    OutsideDomain,

    #[error("parameter lies on the zero set of the first component")]
    OnSigma1Zero,

    #[error("too few admissible samples: needed {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid fixture: {0}")]
    InvalidFixture(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
