use thiserror::Error;

use crate::concept::PointId;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty concept class")]
    EmptyClass,

    #[error("representative must belong to class")]
    NotMember,

    #[error("point outside order universe: {0}")]
    OutsideOrder(PointId),

    #[error("point {point} outside domain of size {domain_size}")]
    PointOutOfRange { point: usize, domain_size: usize },

    #[error("class is not VC-1 tree-structured")]
    NotTreeStructured,

    #[error("class has no all-zeros concept; f-represent it by a member first")]
    MissingZeroConcept,

    #[error("dataset not realizable by class")]
    NotRealizable,

    #[error("oracle scale exceeded: domain size {domain_size} > {limit}")]
    OracleScale { domain_size: usize, limit: usize },

    #[error("insufficient data: need at least {needed} examples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Whether the error stems from invalid user input rather than the
    /// environment. The CLI maps this to exit code 2.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::Io(_) => false,
            Error::Csv(e) => !matches!(e.kind(), csv::ErrorKind::Io(_)),
            Error::Json(e) => !e.is_io(),
            _ => true,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
