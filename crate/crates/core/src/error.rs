use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building or checking finite structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the underlying set must be non-empty")]
    EmptySet,
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("index {index} out of range for a set of size {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("table of length {len} is not a permutation")]
    NotAPermutation { len: usize },
    #[error("map is not idempotent: f(f({witness})) != f({witness})")]
    NotIdempotent { witness: usize },
    #[error("table is not Kimura: xyz != xz at ({}, {}, {})", .witness.0, .witness.1, .witness.2)]
    NotKimura { witness: (usize, usize, usize) },
    #[error("table is not rectangular: xyx != x at ({}, {})", .witness.0, .witness.1)]
    NotRectangular { witness: (usize, usize) },
    #[error("map is not a quasi-endomorphism: y.t(x.y) != y.t(y) at x={}, y={}", .witness.0, .witness.1)]
    NotQuasiEndo { witness: (usize, usize) },
    #[error("pair-map is not a Frobenius-Separability solution: failure at ({}, {}, {})", .witness.0, .witness.1, .witness.2)]
    NotASolution { witness: (usize, usize, usize) },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid quadruple: {0}")]
    InvalidQuadruple(String),
    #[error("size {n} exceeds the supported maximum {max} for {what}")]
    TooLarge { n: usize, max: usize, what: &'static str },
    #[error("size {n} is below the supported minimum {min} for {what}")]
    TooSmall { n: usize, min: usize, what: &'static str },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
