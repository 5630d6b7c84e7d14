use thiserror::Error;

use crate::exactlin::Field;
use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("bad literal: {0}")]
    Literal(String),
    #[error("scalars from different fields: {left} and {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("unsupported characteristic {0}")]
    Characteristic(u64),
    #[error("not convolution invertible: {0}")]
    NotInvertible(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dangling reference `{0}`")]
    DanglingReference(String),
    #[error("verification failed: {}", .0.first_failure_line())]
    Verification(Box<Report>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
