use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// The CLI maps `Parse` and `Domain` to exit code 2 and `Resource` to exit code 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A size limit was exceeded.
    #[error("resource limit `{limit}` exceeded: {value} > {max}")]
    Resource {
        limit: &'static str,
        value: usize,
        max: usize,
    },

    /// Malformed text input. `line` is 1-based, 0 when the input has no lines.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal identity that must always hold did not.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
