use thiserror::Error;

/// Errors raised by gauge evaluation, decomposition search and certification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected} real coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("gauge degenerate on sphere: sampled minimum {min:e} is not positive")]
    DegenerateGauge { min: f64 },

    #[error("certification infeasible at desk scale: {0}")]
    CertificationInfeasible(String),

    #[error("LP infeasible: {0}")]
    Infeasible(String),

    #[error("bisection bracket failure: {0}")]
    Bracket(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
