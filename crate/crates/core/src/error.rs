use thiserror::Error;

use crate::validate::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("not a complex: d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("not a chain map at degree {degree}")]
    NotAChainMap { degree: i32 },
    #[error("validation failed: {0}")]
    Validation(Report),
    #[error("the module must be nonzero")]
    ZeroModule,
    #[error("characteristic {characteristic} too small for an algebra of dimension {dim}")]
    CharacteristicTooSmall { characteristic: u64, dim: usize },
    #[error("semisimple quotient does not split over the ground field; extend the field ({0})")]
    NonSplit(String),
    #[error("mismatched algebras: {0}")]
    MismatchedAlgebras(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
