use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("query budget of {budget} exhausted")]
    BudgetExhausted { budget: usize },

    /// The adversary has declared the game over; further queries are a protocol violation.
    #[error("game over: {0}")]
    GameOver(String),

    #[error("protocol error: {0}")]
    Protocol(String),

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    /// Answers could not be decoded; `rule` names the first violated check.
    #[error("decode error ({rule}): {detail}")]
    Decode { rule: &'static str, detail: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = ProbeError> = std::result::Result<T, E>;

impl ProbeError {
    pub(crate) fn decode(rule: &'static str, detail: impl Into<String>) -> Self {
        ProbeError::Decode {
            rule,
            detail: detail.into(),
        }
    }
}
