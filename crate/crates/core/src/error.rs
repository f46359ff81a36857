use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("unknown state or control `{0}`")]
    UnknownState(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("order is not a quasi order: {0}")]
    NotQuasiOrder(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid Rado point ({c}, {r}): column must be below row")]
    InvalidRadoPoint { c: usize, r: usize },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Precondition failures are distinguished from malformed input: the
    /// input parsed fine but is not admissible for the requested operation.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_))
    }
}
