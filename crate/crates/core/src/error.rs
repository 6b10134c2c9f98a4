use thiserror::Error;

/// A generate-and-check loop ran out of attempts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("exhausted: no acceptable {what} after {attempts} attempts")]
pub struct Exhausted {
    pub what: String,
    pub attempts: u32,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Exhausted(#[from] Exhausted),

    #[error("budget unsatisfiable: {0}")]
    BudgetUnsatisfiable(String),

    #[error("bit layouts do not match: {0}")]
    LayoutMismatch(String),

    #[error("table op #{op_index} precondition violated: {reason}")]
    PreconditionViolated { op_index: usize, reason: String },

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("serialized instance needs {0} bytes, more than a 16-bit offset can address")]
    OffsetOverflow(usize),

    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
