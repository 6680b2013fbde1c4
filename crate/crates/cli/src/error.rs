use thiserror::Error;

/// Failures, each with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("check failed: {0}")]
    Assertion(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Eval(_) => 3,
            CliError::Assertion(_) => 4,
        }
    }
}

impl From<padic_wavefront::Error> for CliError {
    fn from(e: padic_wavefront::Error) -> Self {
        CliError::Eval(e.to_string())
    }
}
