use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} index {index} out of range (must be {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: String,
    },

    #[error("invalid divisor: the zero linear form")]
    InvalidDivisor,

    #[error("invalid weight {value} at position {position}: entries must be positive integers")]
    InvalidWeight { position: usize, value: i64 },

    #[error("weight vectors have different lengths ({lambda} vs {mu})")]
    WeightLengthMismatch { lambda: usize, mu: usize },

    #[error("polynomial is not translation invariant and has no simple-root representation")]
    NotRepresentable,

    #[error("parse error: {0}")]
    Parse(String),

    /// A result that the underlying mathematics guarantees failed to hold.
    /// Always a bug, never a user error.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_index(what: &'static str, index: usize, max_inclusive: usize) -> Result<()> {
    if index > max_inclusive {
        return Err(Error::IndexOutOfRange {
            what,
            index,
            bound: format!("<= {max_inclusive}"),
        });
    }
    Ok(())
}
