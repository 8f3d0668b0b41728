use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix does not have full rank")]
    RankDeficient,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("generators are rationally dependent")]
    RationallyDependent,
    #[error("matrix is not an isometry of the module")]
    NotIsometry,
    #[error("matrix is not a similarity of the module")]
    NotSimilarity,
    #[error("maps belong to different modules")]
    ModuleMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("index {index} exceeds the oracle cap {cap}")]
    OracleCap { index: BigInt, cap: u64 },
    #[error("value is not representable in the field: {0}")]
    NotRepresentable(String),
    #[error("no witness found: {0}")]
    WitnessNotFound(String),
    #[error("parameter is not primitive: {0}")]
    NotPrimitive(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("catalog constant failed validation: {0}")]
    CorruptedCatalog(String),
    #[error("parse error: {0}")]
    Parse(String),
}
