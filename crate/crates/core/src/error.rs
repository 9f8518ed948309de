use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch { context: String, left: usize, right: usize },

    #[error("invalid slot: {0}")]
    Slot(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("input fails its axioms: {0}")]
    AxiomFailure(String),

    #[error("no antipode: {0}")]
    NoAntipode(String),

    #[error("base bialgebras differ")]
    BaseMismatch,

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("insufficient truncation: degree {requested} requested, bound is {bound}")]
    InsufficientTruncation { requested: usize, bound: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
