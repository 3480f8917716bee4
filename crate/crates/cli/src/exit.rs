//! Process exit codes.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    Success = 0,
    /// Unexpected internal failure.
    Internal = 1,
    /// Bad command line (also what clap uses).
    Usage = 2,
    /// Experiment or campaign configuration rejected.
    Config = 3,
    /// The objective returned a non-finite value during `run`.
    Objective = 4,
    /// State file missing, unreadable or inconsistent.
    State = 5,
    /// `observe`: wrong number of coordinates.
    Dimension = 6,
    /// `observe`: point outside the search space.
    OutOfBounds = 7,
    /// `observe`: y is NaN or infinite.
    NonFinite = 8,
    /// State file written by an incompatible version.
    SchemaVersion = 9,
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: Code, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: error.into(),
        }
    }

    /// Maps core errors with a dedicated code; everything else gets `fallback`.
    pub fn from_core(e: dkibo::Error, fallback: Code) -> Self {
        let code = match &e {
            dkibo::Error::DimensionMismatch { .. } => Code::Dimension,
            dkibo::Error::OutOfBounds { .. } => Code::OutOfBounds,
            dkibo::Error::NonFiniteObjective { .. } => Code::NonFinite,
            dkibo::Error::SchemaVersion { .. } => Code::SchemaVersion,
            dkibo::Error::InvalidConfig(_) | dkibo::Error::InvalidSpace(_) | dkibo::Error::UnknownBenchmark(_) => {
                Code::Config
            }
            _ => fallback,
        };
        Self::new(code, e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub trait OrExit<T> {
    fn or_exit(self, code: Code) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrExit<T> for Result<T, E> {
    fn or_exit(self, code: Code) -> Result<T, Failure> {
        self.map_err(|e| Failure::new(code, e))
    }
}
