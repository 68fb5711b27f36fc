use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ball of radius {radius} has {count} elements, above the cap {cap}")]
    BallCap { radius: usize, count: u128, cap: u64 },

    #[error("invalid letter {0:?} (expected one of a, A, b, B)")]
    InvalidLetter(char),

    #[error("vector is not zero-sum")]
    NotZeroSum,

    #[error("vector has an entry at the basepoint {0}")]
    SupportsBasepoint(String),

    #[error("identity has no axis")]
    IdentityAxis,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
