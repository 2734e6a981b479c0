use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole of the rational function at the evaluation point")]
    Pole,
    #[error("invalid q: {0}")]
    InvalidQ(String),
    #[error("real time is only available in numeric mode")]
    RealTimeInExactMode,
    #[error("tensor order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("operation needs order {expected}, got {got}")]
    WrongOrder { expected: usize, got: usize },
    #[error("leg {leg} out of range for order {order}")]
    LegOutOfRange { leg: usize, order: usize },
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("gcd({n}, {d}) != 1")]
    NotCoprime { n: i64, d: i64 },
    #[error("search limit {0} exhausted")]
    SearchExhausted(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
