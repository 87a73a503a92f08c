use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Each variant maps to one of the stable CLI exit codes (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation too small: need at least {required}, got {actual}")]
    TruncationTooSmall { required: usize, actual: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not in space: {0}")]
    NotInSpace(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("structural mismatch: {0}")]
    Structural(String),
}

impl Error {
    /// Short machine-readable tag, used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TruncationTooSmall { .. } => "truncation_too_small",
            Error::Parse(_) => "parse",
            Error::NotInSpace(_) => "not_in_space",
            Error::Domain(_) => "domain",
            Error::Structural(_) => "structural",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TruncationTooSmall { .. } => 2,
            Error::Parse(_) => 3,
            Error::NotInSpace(_) => 4,
            Error::Domain(_) => 5,
            Error::Structural(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
