use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar {0:?}")]
    InvalidScalar(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("morphism is not a closed degree-0 map: {0}")]
    NotClosedDegreeZero(String),
    #[error("chain maps do not share a target")]
    TargetMismatch,
    #[error("family of length {len} is not admissible below cutoff {bound}")]
    Inadmissible { len: usize, bound: usize },
    #[error("flattening produced a family of length {len}, exceeding cutoff {bound}: the cutoff is not regular")]
    RegularityOverflow { len: usize, bound: usize },
    #[error("object is not eligible: {0}")]
    Ineligible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
