use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rational function has a pole at t = {0}")]
    Pole(String),

    #[error("{op}: constant term must be {expected}")]
    ConstantTerm { op: &'static str, expected: &'static str },

    #[error("not rational with this denominator: first nonvanishing tail coefficient at degree {degree}")]
    NotRational { degree: i64 },

    #[error("truncation order {order} leaves surplus {surplus} (< 3) above the numerator window")]
    InsufficientSurplus { order: i64, surplus: i64 },

    #[error("odd power of q^(1/2) survived in {context}")]
    Parity { context: String },

    #[error("non-integral PT coefficient in {context}")]
    Integrality { context: String },

    #[error("GW extraction produced a non-real or odd-power coefficient: {context}")]
    NonReal { context: String },

    #[error("corrupt cache entry {path}; delete it to rebuild")]
    CacheCorrupt { path: PathBuf },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
