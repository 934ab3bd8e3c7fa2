use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("degenerate random draw after {attempts} attempt(s): {what}")]
    Degenerate { what: String, attempts: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("registry error: {0}")]
    Registry(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
