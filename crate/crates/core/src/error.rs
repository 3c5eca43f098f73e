use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which of the three encoding-matrix properties failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// Every α rows of Φ are linearly independent.
    PhiRows = 1,
    /// Every d rows of Ψ are linearly independent.
    PsiRows = 2,
    /// The diagonal of Λ has pairwise distinct entries.
    DistinctLambda = 3,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "property {}", *self as u8)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("value {value} is not an element of a field of order {order}")]
    InvalidScalar { value: u32, order: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("duplicate evaluation point {0}")]
    DuplicateEvaluationPoint(u32),
    #[error("evaluation points must be nonzero")]
    ZeroEvaluationPoint,
    #[error("invalid parameters: {0}")]
    InvalidRegime(String),
    #[error("{property} violated, witness rows {witness:?}")]
    PropertyViolation { property: Property, witness: Vec<usize> },
    #[error("expected {expected} symbols, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("message half is not symmetric")]
    AsymmetryDetected,
    #[error("repair needs exactly {expected} distinct helpers other than the failed node, got {actual}")]
    BadHelperCount { expected: usize, actual: usize },
    #[error("decoding needs exactly {expected} distinct nodes, got {actual}")]
    BadCount { expected: usize, actual: usize },
    #[error("encoding matrix does not have the required structure: {0}")]
    DesignMismatch(String),
    #[error("cannot shorten: {0}")]
    BadShorteningIndex(String),
    #[error("parse error: {0}")]
    Parse(String),
}
