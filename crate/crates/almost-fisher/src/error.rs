use thiserror::Error;

/// Crate-wide error type.
///
/// Invalid *analysis results* (e.g. a family failing verification) are
/// reported through report values, not through this type; errors are
/// reserved for violated preconditions, malformed input and exhausted
/// budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set {index}: element {element} out of range 1..={ground}")]
    ElementOutOfRange {
        index: usize,
        element: usize,
        ground: usize,
    },
    #[error("duplicate member set: indices {first} and {second} are equal")]
    DuplicateSet { first: usize, second: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("structural violation: {0}")]
    Structure(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
}
