use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("ratio must lie strictly between 0 and 1, got {0}")]
    RatioOutOfRange(String),
    #[error("parse error in `{input}` at position {pos}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
    #[error("Minkowski sum with an empty summand")]
    EmptySummand,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("need at least two sets, got {0}")]
    TooFewSets(usize),
    #[error("{0} is not a subset of {1}")]
    NotSubset(String, String),
    #[error("denominator shares a factor with {0}; the measure is undefined at its roots")]
    SharedFactor(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("enumeration bound {0} exceeds the limit {1}")]
    BoundTooLarge(usize, usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
