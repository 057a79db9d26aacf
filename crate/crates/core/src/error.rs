//! Error type shared by all modules of the crate.

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally valid input that admits no meaningful result
    /// (e.g. an all-zero density estimate).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// An iterative routine exhausted its iteration budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A configured resource budget would be exceeded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    /// Malformed external data (CSV, config files).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
