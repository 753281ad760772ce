use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rank {0} is outside the supported range 1..=8")]
    RankOutOfRange(usize),
    #[error("the zero polynomial has empty support")]
    EmptySupport,
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: i64 },
    #[error("curve classes from different monoids (ranks {left} and {right})")]
    MonoidMismatch { left: usize, right: usize },
    #[error("curve class weights must be positive, generator {index} has weight {weight}")]
    NonPositiveWeight { index: usize, weight: i64 },
    #[error("convention violation: {0}")]
    ConventionViolation(String),
    #[error("component `{0}` has no curve class tag")]
    MissingClassTag(String),
    #[error("truncation exceeded: degree {requested} requested, only {available} available")]
    TruncationExceeded { requested: usize, available: usize },
    #[error("partition {parts:?} does not sum to {expected}")]
    PartitionMismatch { parts: Vec<u32>, expected: u32 },
    #[error("intersection profile {profile:?} sums to {sum}, class has degree {degree}")]
    ProfileDegreeMismatch {
        profile: Vec<u32>,
        sum: u64,
        degree: u64,
    },
    #[error("unknown reference space `{0}`")]
    UnknownSpace(String),
    #[error("invalid mutation data: {0}")]
    InvalidMutation(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0} is not invertible in the Laurent ring")]
    NotInvertible(String),
    #[error("corrupt record `{name}`: {reason}")]
    CorruptRecord { name: String, reason: String },
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
