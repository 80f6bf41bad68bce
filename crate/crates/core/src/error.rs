use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// The variants are coarse on purpose: the CLI maps `Validation`,
/// `Unsupported` and `InfiniteQuotient` to exit code 2 and `ResourceLimit`
/// and `Precision` to exit code 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("quotient is not finite: {0}")]
    InfiniteQuotient(String),
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
    #[error("precision failure: {0}")]
    Precision(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// True for errors caused by the input rather than by a budget.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Validation(_) | Error::Unsupported(_) | Error::InfiniteQuotient(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
