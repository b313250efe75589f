use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("process is not weakly stationary: {0}")]
    NonStationary(String),

    #[error("repeated roots (separation {separation:e} below {tolerance:e})")]
    DegenerateRoots { separation: f64, tolerance: f64 },

    #[error("argument {0} sits on a branch point")]
    BranchPoint(f64),

    #[error("argument {0} sits on the prefactor pole")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate family: {0}")]
    DegenerateFamily(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("no admissible branch at lambda = {lambda}: {reason}")]
    Solver { lambda: f64, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
