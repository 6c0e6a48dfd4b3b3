use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] nambu_core::Error),
}

impl CliError {
    /// 2 for usage and syntax errors, 1 for errors raised by a computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(nambu_core::Error::Parse { .. }) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn code(&self) -> String {
        match self {
            CliError::Usage(_) => "cli.usage".to_string(),
            CliError::Domain(e) => e.code(),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
