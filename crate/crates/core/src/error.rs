use thiserror::Error;

/// Errors raised by constructions and engines in this crate.
///
/// The variants line up with the CLI exit codes: input errors are malformed
/// or inconsistent arguments, precondition errors are well-formed arguments
/// that violate a mathematical hypothesis (and carry a witness), and
/// `Unsupported` marks inputs outside the regime an operation is defined on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("precondition violated: {reason}")]
    Precondition { reason: String, witness: Option<String> },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(reason: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Precondition {
            reason: reason.into(),
            witness: Some(witness.into()),
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Error::Precondition { witness, .. } => witness.as_deref(),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
