use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed formula or sequent text.
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },

    #[error("sequent contains {0} turnstiles `|-`, expected exactly one")]
    MultipleTurnstiles(usize),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured guard would be exceeded. The message carries the computed bound.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("malformed truth value: {0}")]
    MalformedValue(String),

    #[error("truth values have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("atom `{0}` is not bound by the valuation")]
    UnboundAtom(String),

    /// A matrix file failed to parse or validate.
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
