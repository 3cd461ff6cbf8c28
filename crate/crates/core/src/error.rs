use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("group needs at least one generator")]
    NoGenerators,

    #[error("group is not transitive on its domain")]
    NotTransitive,

    #[error("not a subgroup: generator {index} of the candidate is not contained in the ambient group")]
    NotSubgroup { index: usize },

    #[error("{what} is {size}, which exceeds the cap of {cap}")]
    CapExceeded { what: String, size: String, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("zero has no multiplicative inverse")]
    DivisionByZero,

    #[error("graph is not regular")]
    NotRegular,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("generator {index} does not preserve adjacency")]
    NotAnAutomorphism { index: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error on line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
