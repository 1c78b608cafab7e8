use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("generator {index} is not homogeneous (term degrees {degrees:?})")]
    Inhomogeneous { index: usize, degrees: Vec<i64> },

    #[error("generators live in different free modules")]
    AmbientMismatch,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("monomial {0} is not in the module")]
    NotMember(String),

    #[error("value {value} out of range: {what}")]
    Range { what: &'static str, value: i64 },

    #[error("ring with weights {sub:?} is not a prefix subring of {full:?}")]
    NotPrefixSubring { sub: Vec<u32>, full: Vec<u32> },

    #[error("complex is not minimal: unit entry in d{index} at ({row}, {col})")]
    NotMinimal { index: usize, row: usize, col: usize },

    #[error("Betti table is not diagonal: nonzero entry at (i={i}, j={j})")]
    NotDiagonal { i: usize, j: i64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
