use thiserror::Error;

/// Errors produced by the engine.
///
/// Input errors (malformed text) and domain errors (well-formed input that
/// violates an operation's precondition) are kept apart so front ends can
/// report them differently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("duplicate node {0}")]
    DuplicateNode(String),

    #[error("empty scheme")]
    EmptyScheme,

    #[error("{0}")]
    Domain(String),

    #[error("linear system has no exact solution")]
    Infeasible,

    /// A self-check inside a decision procedure failed.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    /// True for errors caused by malformed input text.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::DuplicateNode(_) | Error::EmptyScheme
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
