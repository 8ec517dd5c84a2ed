use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("denominator has zero constant term")]
    NonUnitConstantTerm,
    #[error("series coefficient {index} is not an integer")]
    NonIntegerCoefficient { index: usize },
    #[error("class index {index} out of range for {len} classes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("more than {limit} distinct classes discovered")]
    StateExplosion { limit: usize },
    #[error("group order {order} exceeds the supported bound {limit}")]
    OrderLimitExceeded { order: usize, limit: usize },
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("element is not in the algebra")]
    ElementNotInAlgebra,
    #[error("ring size {size} exceeds the supported bound {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("work budget of {budget} enumerated tuples exceeded")]
    WorkBudgetExceeded { budget: u64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0} is not a prime power")]
    InvalidFieldOrder(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resolvent self-check failed at class {class}, term {term}")]
    ResolventMismatch { class: usize, term: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
