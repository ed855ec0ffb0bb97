use thiserror::Error;

use crate::intlin::IntlinError;
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Intlin(#[from] IntlinError),
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Dangling indices or mismatched shapes in composite data.
    #[error("structural error: {0}")]
    Structural(String),
    /// Optional data required by the operation is absent.
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("invalid data:\n{0}")]
    Invalid(ValidationReport),
}

pub type Result<T> = std::result::Result<T, Error>;
