use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("element {element:?} does not belong to the group with factors {factors:?}")]
    ElementMismatch { element: Vec<u64>, factors: Vec<u64> },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("element set is not closed under multiplication")]
    NotClosed,

    #[error("not a coboundary")]
    NotACoboundary,

    #[error("structure constants violate the simple-module constraints: {0}")]
    ConstraintViolation(String),

    #[error("braid generator index {index} out of range for tensor degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("module is not simple: {0}")]
    NotSimple(String),

    #[error("size budget exceeded: {size} basis tensors (budget {budget})")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("Nichols algebra is not of finite type")]
    NotFiniteType,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
