use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("no convergence: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
