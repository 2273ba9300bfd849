use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("instance too large: {what} needs {needed}, budget is {budget}")]
    Guard {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("timed out after {0:?}")]
    Timeout(std::time::Duration),

    #[error("invalid coloring: vertices {0} and {1} are adjacent and share a color")]
    InvalidColoring(usize, usize),

    #[error("ambiguous decoder: blocks {x1:?}/{x2:?} and {y1:?}/{y2:?} share colors but give different outcomes")]
    Ambiguous {
        x1: Vec<usize>,
        x2: Vec<usize>,
        y1: Vec<usize>,
        y2: Vec<usize>,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("decode mismatch on sample {sample}: expected {expected:?}, got {got:?}")]
    Mismatch {
        sample: usize,
        expected: Vec<usize>,
        got: Vec<usize>,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for budget and timeout failures, which callers treat as "not attempted".
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. } | Error::Timeout(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
