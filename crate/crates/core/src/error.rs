use thiserror::Error;

use crate::dgla::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("duplicate symbol {0:?}")]
    DuplicateSymbol(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("contradictory bracket entries: {0}")]
    ContradictoryBracket(String),

    #[error("algebra failed validation: {0}")]
    Validation(Box<Violation>),

    #[error("element leaves the path space: {0}")]
    Constraint(String),

    #[error("bracket of arity {arity} exceeds the configured cap {cap}")]
    ArityCap { arity: usize, cap: usize },

    #[error("series division by a non-unit: {0}")]
    NonUnit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
