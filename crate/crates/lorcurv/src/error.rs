use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate inner product")]
    Degenerate,
    #[error("not symmetric: {0}")]
    NotSymmetric(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("ambiguous at tolerance: {0}")]
    Ambiguous(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("irrational value in exact mode: {0}")]
    Irrational(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 2 for unreadable input or unknown family,
    /// 3 for input that parses but is not a valid datum, 4 for analysis
    /// inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::UnknownFamily(_) => 2,
            Error::Dimension(_)
            | Error::Degenerate
            | Error::NotSymmetric(_)
            | Error::Precondition(_)
            | Error::Invalid(_)
            | Error::Irrational(_) => 3,
            Error::Ambiguous(_) | Error::Inconsistent(_) => 4,
        }
    }
}
