use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("eigenvalues must be positive (degree {degree}, list {list})")]
    NonPositiveEigenvalue { degree: usize, list: &'static str },

    #[error("pairing violated: exact spectrum of degree {degree} differs from coexact spectrum of degree {}", degree - 1)]
    Pairing { degree: usize },

    #[error("Poincaré duality violated: betti[{p}] != betti[{q}]")]
    Duality { p: usize, q: usize },

    #[error("spectrum for degree {0} is required but missing")]
    MissingSpectrum(usize),

    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),

    #[error("guard violated: {0}")]
    GuardViolated(String),

    #[error("argument out of supported range: {0}")]
    OutOfRange(String),

    #[error("numerical routine failed to converge: {0}")]
    NonConvergence(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
