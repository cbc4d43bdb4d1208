use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("parse_error(line {line}): {message}")]
    Parse { line: usize, message: String },
    #[error("unresolved_name({0})")]
    UnresolvedName(String),
    #[error("unknown_statement({0})")]
    UnknownStatement(String),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] normkeep::Error),
}

impl HarnessError {
    pub fn code(&self) -> &'static str {
        match self {
            HarnessError::Parse { .. } => "parse_error",
            HarnessError::UnresolvedName(_) => "unresolved_name",
            HarnessError::UnknownStatement(_) => "unknown_statement",
            HarnessError::Invalid(_) => "invalid_scenario",
            HarnessError::Io(_) => "io",
            HarnessError::Core(e) => e.code(),
        }
    }
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        HarnessError::Parse {
            line: e.line(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Exit status for CI: all passed.
pub const EXIT_OK: i32 = 0;
/// An expectation failed or the search found a counterexample.
pub const EXIT_FAILURE: i32 = 1;
/// The scenario or the command line could not be used.
pub const EXIT_CONFIG: i32 = 2;
