use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no catalog group named {name:?} of order {order}")]
    CatalogMiss { order: usize, name: String },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid Ferrero data: {0}")]
    Construction(String),

    #[error("not a nearring: {0}")]
    InvalidNearring(String),

    #[error("not a nearfield: {0}")]
    InvalidNearfield(String),

    #[error("invalid nearvector space: {0}")]
    InvalidNearvectorSpace(String),

    #[error("planarity indeterminate: {0}")]
    Indeterminate(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
