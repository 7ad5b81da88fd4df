use std::io;

use thiserror::Error;

/// Exit status: success.
pub const EXIT_OK: i32 = 0;
/// Exit status: malformed input, unreadable file, bad flags.
pub const EXIT_INPUT: i32 = 2;
/// Exit status: a mathematical hypothesis of the requested operation fails.
pub const EXIT_PRECONDITION: i32 = 3;
/// Exit status: a node budget or dimension cap ran out before an answer.
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] semicoarse::Error),

    #[error("{source_name}:{line}: {message}")]
    Parse { source_name: String, line: usize, message: String },

    #[error("{source_name}: {source}")]
    Json { source_name: String, source: serde_json::Error },

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(semicoarse::Error::Precondition { .. } | semicoarse::Error::Unsupported(_)) => {
                EXIT_PRECONDITION
            }
            _ => EXIT_INPUT,
        }
    }

    /// The witness carried by a precondition failure, if any.
    pub fn witness(&self) -> Option<&str> {
        match self {
            CliError::Core(e) => e.witness(),
            _ => None,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(semicoarse::Error::input("x")).exit_code(), EXIT_INPUT);
        assert_eq!(CliError::from(semicoarse::Error::precondition("x", "w")).exit_code(), EXIT_PRECONDITION);
        assert_eq!(CliError::invalid("x").exit_code(), EXIT_INPUT);
        let e = CliError::Parse { source_name: "a.txt".into(), line: 3, message: "bad".into() };
        assert_eq!(e.to_string(), "a.txt:3: bad");
    }
}
