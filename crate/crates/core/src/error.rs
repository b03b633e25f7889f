use num_bigint::BigUint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix of size {0} is not nilpotent")]
    NotNilpotent(usize),
    #[error("subspace is not invariant: image of basis vector {index} leaves it")]
    NotInvariant { index: usize },
    #[error("invalid Cartan type: {0}")]
    InvalidCartanType(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("unknown real form {0:?}")]
    UnknownForm(String),
    #[error("catalog entry {form}: {reason}")]
    Catalog { form: String, reason: String },
    #[error("module of dimension {required} exceeds the size cap {cap}")]
    SizeCap { required: BigUint, cap: u64 },
    #[error("table data: {0}")]
    TableData(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
