use alloc::string::String;

/// Every failure mode of the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("letter {letter} is out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("{0}")]
    InvalidMove(String),
    #[error("row {0} is not of the required form")]
    BadRow(String),
    #[error("variable {0} is external and cannot be excluded")]
    ExternalVariable(String),
    #[error("potential mismatch: {0}")]
    PotentialMismatch(String),
    #[error("{0}")]
    NotClosed(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = core::result::Result<T, Error>;
