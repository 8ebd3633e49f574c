use thiserror::Error;

/// Errors raised by the solver and the inequality lab.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("shape mismatch: expected {expected} values, got {actual}")]
    Shape { expected: usize, actual: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("field is not real-valued: Hermitian defect {defect:.3e} exceeds tolerance")]
    InvalidField { defect: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("input is not band-limited enough for an alias-free product: {0}")]
    Aliasing(String),

    #[error("blow-up detected at t = {t}: {reason}")]
    BlowUp { t: f64, reason: String },

    #[error("unsupported sampling: {0}")]
    UnsupportedSampling(String),

    #[error("initial data cannot be split: {0}")]
    Unsplittable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
