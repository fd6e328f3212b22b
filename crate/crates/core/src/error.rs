use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A target vector does not lie in the integral (or 𝔽_p) column span.
    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computed object disagrees with the closed form it is supposed to match.
    #[error("theorem violation in {check}: {detail}")]
    TheoremViolation { check: String, detail: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn violation(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            check: check.into(),
            detail: detail.into(),
        }
    }
}
