use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence index must be at least 1")]
    ZeroIndex,

    #[error("gap sequence must contain the increment 1")]
    MissingUnitIncrement,

    #[error("increments must be positive and pairwise distinct")]
    InvalidIncrement,

    #[error("increment {0} is too large to be indexed")]
    IndexOverflow(u32),

    #[error("gap sequence {{{sequence}}} is not valid for n = {n}")]
    SequenceNotValidForN { sequence: String, n: usize },

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("largest increment {h} is out of range for n = {n}")]
    IncrementOutOfRange { h: usize, n: usize },

    /// Refusal to walk a space larger than the configured limit.
    #[error("capacity exceeded: {what} has {cardinality} elements (limit {limit})")]
    Capacity {
        what: String,
        cardinality: BigUint,
        limit: String,
    },

    #[error("n = {n} is outside the supported range {min}..={max}")]
    UnsupportedN { n: usize, min: usize, max: usize },

    #[error("{what} is only defined for n >= {min}, got {n}")]
    OutOfDomain { what: &'static str, n: u64, min: u64 },

    #[error("{what} at n = {n} evaluated to the non-integer {value}")]
    NonIntegral {
        what: &'static str,
        n: u64,
        value: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument must be positive")]
    ZeroArgument,

    #[error("the second largest increment is undefined for a sequence with fewer than two increments")]
    NeedTwoIncrements,

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
