use alloc::string::String;

/// Errors raised by the calculus.
///
/// The variants line up with the three failure classes a caller has to
/// distinguish: bad input, exhausted resource budget, and a failed
/// internal consistency check.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("cell budget exceeded: {cells} cells (limit {limit})")]
    Budget { cells: usize, limit: usize },

    /// Two sample points of one cell produced different values. This means a
    /// wall set was not fine enough and must never be silently resolved.
    #[error("inconsistent values on cell {cell}: {first} vs {second}")]
    Inconsistent { cell: String, first: i64, second: i64 },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
