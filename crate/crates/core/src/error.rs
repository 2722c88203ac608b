//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("zero divisor: element has norm 0")]
    ZeroDivisor,

    #[error("gram matrix is singular")]
    SingularGram,

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("elements belong to different algebras")]
    MixedAlgebras,

    #[error("unsupported rank {0}")]
    UnsupportedRank(usize),

    #[error("unsupported field/rank combination: {0}")]
    UnsupportedField(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("p-adic precision exhausted at p = {prime}: {detail}")]
    PrecisionExhausted { prime: u64, detail: String },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("could not factor {0} with desk-scale trial division")]
    FactorizationFailed(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for the two "no answer, not a wrong answer" outcomes.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::Indeterminate(_) | Error::PrecisionExhausted { .. }
        )
    }
}
