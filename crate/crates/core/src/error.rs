use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// that the command-line front end forwards verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),
    #[error("ambient space mismatch: {0}")]
    WrongAmbient(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("inconsistent input contract: {0}")]
    Inconsistent(String),
    #[error("k-invariant oracle failure: {0}")]
    Oracle(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::InvalidInput(_) => "invalid_input",
            Error::NotCocycle(_) => "not_cocycle",
            Error::SimplicialIdentity(_) => "simplicial_identity",
            Error::WrongAmbient(_) => "wrong_ambient",
            Error::Precondition(_) => "precondition_violated",
            Error::OutOfRange(_) => "out_of_range",
            Error::Inconsistent(_) => "inconsistent_contract",
            Error::Oracle(_) => "oracle_failure",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse_error",
        }
    }

    /// True for errors caused by malformed or invalid user input, as opposed
    /// to a violated mathematical precondition of a computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_)
                | Error::InvalidInput(_)
                | Error::NotCocycle(_)
                | Error::SimplicialIdentity(_)
                | Error::WrongAmbient(_)
                | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
