use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty face-count sequence")]
    EmptyInput,
    #[error("face count at dimension {dim} is not positive")]
    NonPositiveCount { dim: i64 },
    #[error("alternating face-count sum is {sum}, expected 0")]
    EulerViolation { sum: String },
    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(usize),
    #[error("modular vector has zero total")]
    ZeroTotal,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("bipyramid base must have dimension at least 1")]
    DegenerateBase,
    #[error("index {k} outside family range (minimum {min})")]
    IndexOutOfRange { k: usize, min: usize },
    #[error("matrix order must be at least 1, got {0}")]
    InvalidOrder(usize),
    #[error("row and column sums are not all equal")]
    NotEqualSum,
    #[error("common row/column sum is zero")]
    ZeroSigma,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("face family is inconsistent: {0}")]
    InconsistentFamily(String),
    #[error("enumeration would exceed the face cap of {cap}")]
    ResourceCap { cap: usize },
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}
