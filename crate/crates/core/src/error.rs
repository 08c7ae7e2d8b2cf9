use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("algebra dimension parameter n = {0} is below the minimum of 3")]
    DimensionTooSmall(usize),

    #[error("algebra is not filiform")]
    NotFiliform,

    #[error("graded product [f_{left}, f_{right}] leaves the expected degree")]
    GradingViolation { left: usize, right: usize },

    #[error("table is not in adapted form: {0}")]
    NotAdapted(String),

    #[error("inadmissible witness: {0}")]
    InadmissibleWitness(String),

    #[error("invalid transformation: {0}")]
    InvalidTransform(String),

    #[error("basis images are linearly dependent")]
    SingularBasis,

    #[error("{0}")]
    OutOfRange(String),

    #[error("parameters belong to different families or dimensions")]
    FamilyMismatch,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}
