use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("reduction diverged: {0}")]
    Divergence(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}
