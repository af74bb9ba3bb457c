//! Error type shared by all modules.

use crate::poly::MultilinearPolynomial;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on the input was violated (out-of-range index,
    /// non-increasing candidate, invalid parameter, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two values from incompatible domains were combined (different
    /// ambient `n`, different slices, ...).
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// A polynomial expected to be harmonic was not; carries the nonzero
    /// defect (the sum of its first partial derivatives).
    #[error("polynomial is not harmonic (defect has {} terms)", defect.terms().len())]
    NotHarmonic { defect: MultilinearPolynomial },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::DomainMismatch(msg.into())
    }
}
