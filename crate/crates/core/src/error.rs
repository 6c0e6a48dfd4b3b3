use thiserror::Error;

/// Errors raised by the algebra and numeric routines.
///
/// Every variant carries the name of the module that raised it so that
/// front ends can report module-qualified codes such as `factor.resource_limit`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{module}: invalid argument: {message}")]
    InvalidArgument {
        module: &'static str,
        message: String,
    },
    #[error("{module}: resource limit exceeded: {message}")]
    ResourceLimit {
        module: &'static str,
        message: String,
    },
    #[error("nambu: integration failed at step {step}: {message}")]
    IntegrationFailure { step: usize, message: String },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{module}: internal inconsistency: {message}")]
    Internal {
        module: &'static str,
        message: String,
    },
}

impl Error {
    pub fn invalid(module: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidArgument {
            module,
            message: message.into(),
        }
    }

    pub fn limit(module: &'static str, message: impl Into<String>) -> Self {
        Error::ResourceLimit {
            module,
            message: message.into(),
        }
    }

    pub fn internal(module: &'static str, message: impl Into<String>) -> Self {
        Error::Internal {
            module,
            message: message.into(),
        }
    }

    /// Stable machine-readable code, e.g. `poly.invalid_argument`.
    pub fn code(&self) -> String {
        match self {
            Error::InvalidArgument { module, .. } => format!("{module}.invalid_argument"),
            Error::ResourceLimit { module, .. } => format!("{module}.resource_limit"),
            Error::IntegrationFailure { .. } => "nambu.integration_failure".to_string(),
            Error::Parse { .. } => "cli.parse_error".to_string(),
            Error::Internal { module, .. } => format!("{module}.internal"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
