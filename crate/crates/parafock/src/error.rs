use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// All arithmetic is exact, so there are no tolerance or overflow variants:
/// a failed exactness check ([`Error::InexactDivision`], [`Error::NotInSpan`])
/// always indicates an inconsistent input or an internal bug, never rounding.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("{what} = {value} out of range (max {max})")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    #[error("tableau has {rows} rows but the Clifford order is {p}")]
    RowBoundExceeded { rows: usize, p: usize },

    #[error("column indices must be strictly increasing and within 1..=n")]
    NonIncreasingIndices,

    #[error("unsupported Clifford order p = {0}")]
    UnsupportedOrder(usize),

    #[error("generator not available for this operation: {0}")]
    UnsupportedGenerator(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("vector outside the spanned weight space: {0}")]
    NotInSpan(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
