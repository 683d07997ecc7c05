use thiserror::Error;

/// Errors produced by tensor algebra, solvers and data ingestion.
#[derive(Debug, Error)]
pub enum HenckyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not positive definite (eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    #[error("unsupported dimension {0} (expected {1})")]
    UnsupportedDimension(usize, usize),

    #[error("orientation error: det F = {0:e} must be positive")]
    Orientation(f64),

    #[error("monotonicity violation: khat = {0} must exceed 1/8 for a unique inversion")]
    MonotonicityViolation(f64),

    #[error("root solver failed to converge: {0}")]
    SolverFailure(String),

    #[error("unknown model tag `{0}`")]
    UnknownModel(String),

    #[error("unknown curve id `{0}`")]
    UnknownCurve(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unit error: {0}")]
    Unit(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HenckyError>;
