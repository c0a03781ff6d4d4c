use thiserror::Error;

/// Errors raised by the polarization library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Invalid configuration (cutoffs, margins, tolerances, mesh options).
    #[error("configuration error: {0}")]
    Config(String),

    /// Two operators or states were built on different Fock bases.
    #[error("basis mismatch: n_max {left} vs {right}")]
    BasisMismatch { left: usize, right: usize },

    /// Input outside the domain of a formula (e.g. no field at all).
    #[error("domain error: {0}")]
    Domain(String),

    /// The truncated coherent state lost too much norm to the cutoff.
    #[error("truncation insufficient: norm deficit {norm_deficit:e} exceeds {limit:e} (n_max = {n_max})")]
    Truncation {
        norm_deficit: f64,
        limit: f64,
        n_max: usize,
    },

    /// An input violated an identity it is required to satisfy.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The operation has no finite answer for this input (point at infinity).
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("serialization failed: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
