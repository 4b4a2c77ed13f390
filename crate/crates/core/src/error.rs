use thiserror::Error;

use crate::exactla::field::Field;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("malformed scalar {0:?}")]
    Scalar(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// `d_{n-1} ∘ d_n` is nonzero.
    #[error("differential does not square to zero at degree {0}")]
    NotAComplex(i32),

    #[error("non-negatively graded complex has a generator in degree {0}")]
    NegativeDegree(i32),

    #[error("not a chain map: fails to commute with the differential at degree {0}")]
    NotAChainMap(i32),

    #[error("not a {kind} map: {detail}")]
    NotAStructureMap { kind: &'static str, detail: String },

    #[error("square does not commute")]
    SquareDoesNotCommute,

    #[error("no lift: {0}")]
    NoLift(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency: {0}")]
    Internal(String),

    #[error("format: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that state a verified invariant violation of
    /// well-formed input, as opposed to unreadable input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::NotAComplex(_)
                | Error::NegativeDegree(_)
                | Error::NotAChainMap(_)
                | Error::NotAStructureMap { .. }
                | Error::SquareDoesNotCommute
                | Error::NoLift(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
