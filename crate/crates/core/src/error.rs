use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("delta must be odd (got {0})")]
    EvenDelta(u32),
    #[error("delta must be at least 3 (got {0})")]
    DeltaTooSmall(u32),
    #[error("delta {delta} exceeds the cap {cap} (needs about {} MiB; raise the cap to override)", .bytes >> 20)]
    DeltaAboveCap { delta: u32, cap: u32, bytes: u64 },
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("internal contradiction: {0}")]
    Contradiction(String),
    #[error("construction failed: {message} (blocks {blocks:?})")]
    Construction { message: String, blocks: Vec<usize> },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
