use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    #[error("unit law fails on basis element {0}")]
    UnitLaw(usize),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("span is not closed under multiplication: product of basis vectors {0} and {1} leaves it")]
    NotClosed(usize, usize),

    #[error("the unit is not in the span of the given vectors")]
    UnitNotInSpan,

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// A property every extension must satisfy failed. Always a bug, never a verdict.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Whether the error stems from malformed or invalid user data.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Inconsistency(_))
    }
}

/// Returns an internal-inconsistency error unless `cond` holds.
pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistency(what()))
    }
}
