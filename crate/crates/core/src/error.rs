use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is out of range [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid code dimensions n = {n}, k = {k}")]
    InvalidDimensions { n: usize, k: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("column {0} of the parity-check matrix is all-zero")]
    ZeroColumn(usize),

    #[error("parity-check matrix has rank {rank}, expected {q}")]
    RankDeficient { rank: usize, q: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("no finite error-building block exists for the syndrome")]
    DecodeFailure,

    #[error("level table entry (t = {size}, v = {v:#x}) is empty")]
    EmptyEntry { size: usize, v: u64 },

    #[error("symmetric combination requires a nonzero target")]
    ZeroSymmetricTarget,

    #[error("not an extended-Hamming parity-check matrix: {0}")]
    NotExtendedHamming(String),

    #[error("enumeration guard exceeded: {count} candidates > limit {limit}")]
    EnumerationGuard { count: u128, limit: u128 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
