use thiserror::Error;

/// Errors produced by every fallible operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The supplied order relation is not a partial order (a cycle closes on itself).
    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    /// The coordinate weight table violates one of the weight axioms.
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation requires structure the input does not have
    /// (a chain poset, equal block sizes, a linear code, ...).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Linear codes need a prime modulus.
    #[error("unsupported alphabet: {0}")]
    UnsupportedAlphabet(String),

    /// A configured resource cap would be exceeded.
    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: &'static str,
        needed: String,
        cap: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn capacity(what: &'static str, needed: impl ToString, cap: u64) -> Self {
        Error::Capacity {
            what,
            needed: needed.to_string(),
            cap,
        }
    }

    /// True for resource-cap failures, which callers usually treat differently
    /// from validation failures.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
