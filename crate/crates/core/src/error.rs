//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("input error: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("slice rank check failed after {attempts} attempts")]
    RankCheckFailed { attempts: usize },

    #[error("no usable numerical rank gap in singular values: {0}")]
    GapAmbiguous(String),

    #[error("witness slicing produced no points (is the dimension correct?)")]
    EmptyWitness,

    #[error("fiber cascade lost all paths: {0}")]
    EmptyFiber(String),

    #[error("no critical points found: {0}")]
    EmptyCritical(String),

    #[error("generic decomposition failed after {attempts} attempts")]
    GenericFailure { attempts: usize },

    #[error("path converged onto a different fiber point")]
    FiberMiss { found: Vec<num_complex::Complex64> },

    #[error("gradient descent path gave no certificate: {0}")]
    NoLocalCertificate(String),

    #[error("monodromy stalled with repeated loop failures")]
    MonodromyStalled,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
