//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, AlgError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("incompatible context: {0}")]
    IncompatibleContext(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid generator name `{0}`")]
    InvalidName(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator `{0}` must have degree >= 1")]
    InvalidDegree(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unknown field `{0}` (expected F2, F<p>, or Q)")]
    UnknownField(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),

    #[error("relation is zero and cannot be oriented")]
    ZeroRelation,

    #[error("generator name `{0}` appears in both tensor factors")]
    NameCollision(String),

    #[error("tensor factors carry different sign policies")]
    PolicyMismatch,

    #[error("unknown preset `{name}` over {field}")]
    UnknownPreset { name: String, field: String },

    #[error("degree {degree} slice has {words} words, over the cap of {cap}")]
    ResourceCap { degree: u32, words: u128, cap: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("rewrite rule `{0}` is not a consequence of the relations")]
    RuleUnsound(String),

    #[error("`{0}` is not a basis word of the rewrite system")]
    NotBasisWord(String),

    #[error("coproduct is not well defined: {0}")]
    CoproductInvalid(String),

    #[error("series division leaves a remainder at degree {0}")]
    SeriesRemainder(u32),

    #[error("series denominator must have constant term 1 or -1")]
    SeriesDenominator,

    #[error("james construction needs a reduced series (zero constant term)")]
    SeriesNotReduced,
}
