use thiserror::Error;

/// Errors shared by every engine in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A size or argument exceeds a configured capacity ceiling.
    #[error("{what} = {requested} exceeds the configured ceiling of {ceiling}")]
    Capacity {
        what: &'static str,
        requested: u64,
        ceiling: u64,
    },

    /// An argument falls outside the range a dense table covers.
    #[error("{what} = {value} is beyond the dense limit {limit}; {hint}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        limit: u64,
        hint: &'static str,
    },

    /// A structurally invalid argument (empty range, too few samples, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An argument outside a mathematical domain precondition.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
