use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric parameter is outside the supported range.
    #[error("out of range: {0}")]
    Bound(String),

    /// An argument does not belong to the graph or violates a precondition.
    #[error("invalid input: {0}")]
    Domain(String),

    /// An exhaustive search ran past its node budget.
    #[error("search budget of {limit} nodes exhausted after {visited} nodes ({partial})")]
    Budget {
        limit: u64,
        visited: u64,
        /// Human-readable summary of what was covered before stopping.
        partial: String,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn bound(msg: impl Into<String>) -> Self {
        Error::Bound(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
