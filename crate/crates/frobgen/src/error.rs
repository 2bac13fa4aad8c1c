use thiserror::Error;

/// Errors surfaced by the counting and search engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: empty lists, duplicates, zeros, out-of-range arguments.
    #[error("invalid input: {0}")]
    Validation(String),
    /// Mathematically undefined request, e.g. a g-sequence of a non-coprime tuple.
    #[error("domain error: {0}")]
    Domain(String),
    /// Exact arithmetic exceeded the 64-bit count type.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    /// Table allocation or size limits exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
