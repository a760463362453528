use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("operation requires a finite conjugate exponent (p > 1)")]
    InfiniteConjugate,

    #[error("index {index} out of range for subset of cardinality {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subset indices must be positive and strictly increasing: {0:?}")]
    InvalidSubset(Vec<u32>),

    #[error("weight must be positive, got {0}")]
    NonPositiveWeight(f64),

    #[error("exponent t = {t} outside ({lower}, 1)")]
    InvalidExponent { t: f64, lower: f64 },

    #[error("truncation point s must be positive")]
    InvalidTruncation,

    #[error("no truncation point s <= {max} meets slack target {target:e}")]
    TruncationExhausted { max: u64, target: f64 },

    #[error("searched {j_max} intervals without meeting the residual target (residual {residual:e}, target {target:e})")]
    IntervalsExhausted {
        j_max: usize,
        residual: f64,
        target: f64,
    },

    #[error("cardinality limit {l_max} reached")]
    CardinalityLimit { l_max: usize },

    #[error("empty exponent grid for a*p* = {0}")]
    EmptyGrid(f64),

    #[error("truncated universe too small: outside mass {outside:e} >= allowed {allowed:e}")]
    UniverseTooSmall { outside: f64, allowed: f64 },

    #[error("truncated universe holds more than {limit} subsets")]
    UniverseTooLarge { limit: usize },

    #[error("cannot parse set notation at byte {pos}: {msg}")]
    Notation { pos: usize, msg: String },
}
