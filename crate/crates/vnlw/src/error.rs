use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    /// Grid sizes, caps and other resource limits.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("accuracy not reached: {message} (achieved estimate {achieved:.3e})")]
    Accuracy { message: String, achieved: f64 },
    #[error("outside regime: {0}")]
    Regime(String),
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
