use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps these onto exit codes: `Parse` is 2, `Resource`,
/// `Capability` and `Bound` are 3, everything else is a failed check (1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },

    #[error("resource budget `{budget}` exceeded (limit {limit})")]
    Resource { budget: &'static str, limit: usize },

    #[error("size bound `{what}` exceeded: {actual} > {limit}")]
    Bound {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("oracle violates the presheaf law: value on {larger} does not restrict into value on {smaller}")]
    Oracle { larger: String, smaller: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn bound(what: &'static str, actual: usize, limit: usize) -> Self {
        Error::Bound {
            what,
            actual,
            limit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
