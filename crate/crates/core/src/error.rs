use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),

    #[error("no convergence after {iterations} iterations ({what})")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("negative eigenvalue {0:.3e} in a matrix required to be PSD")]
    NegativeSpectrum(f64),

    #[error("Schatten exponent must be >= 1, got {0}")]
    BadExponent(f64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("operator is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("invalid weights: {0}")]
    WeightsInvalid(String),

    #[error("invalid block partition: m = {m} with d = {d}")]
    BadPartition { d: usize, m: usize },

    #[error("matrix is not a density matrix: {0}")]
    NotAState(String),

    #[error("support violation: reference state has a null direction carrying weight {0:.3e}")]
    SupportViolation(f64),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("matrix is not column stochastic: {0}")]
    NotStochastic(String),

    #[error("start recipe {0} not applicable: {1}")]
    BadRecipe(&'static str, String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("invalid range: {0}")]
    RangeInvalid(String),

    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
