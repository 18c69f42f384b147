use thiserror::Error;

/// Failure classes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Invalid input to an operation (bad quantum numbers, nonpositive step, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Evaluation point outside the range a quantity is defined on.
    #[error("{what} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// Series or iteration failed to converge, overflow, grid leak.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Physically inadmissible setup, e.g. an unbound relative-motion channel.
    #[error("domain error: {0}")]
    Domain(String),

    /// Request beyond the documented capability of an evaluator.
    #[error("capability limit: {0}")]
    Capability(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

pub(crate) fn numerical(msg: impl Into<String>) -> Error {
    Error::Numerical(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
