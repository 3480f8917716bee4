use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    #[error("point {x:?} lies outside the search space")]
    OutOfBounds { x: Vec<f64> },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("objective returned non-finite value {y} at x = {x:?}")]
    NonFiniteObjective { x: Vec<f64>, y: f64 },

    #[error("covariance matrix is not positive definite even with jitter {jitter:e} (n = {n})")]
    IllConditioned { n: usize, jitter: f64 },

    #[error("not enough observations: need at least {needed}, have {have}")]
    NotEnoughData { needed: usize, have: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),

    #[error("state file schema version {found} is not supported (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },

    #[error("state file: {0}")]
    State(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
