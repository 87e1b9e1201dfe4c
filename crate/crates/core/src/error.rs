use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation {0:?}: not a bijection of 1..=m")]
    InvalidPermutation(Vec<usize>),

    #[error("{what} size {requested} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("expected an even size, got {0}")]
    OddSize(usize),

    #[error("size must be positive")]
    EmptySize,

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("{op} is not defined for {mode} arrays")]
    WrongMode { op: &'static str, mode: &'static str },

    #[error("generator a({0},{1}) must have i < j")]
    UnnormalizedGenerator(usize, usize),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("assignment is missing variable {0}")]
    MissingVariable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error at `{key}`: {message}")]
    Schema { key: String, message: String },

    #[error("kernel {0} is numeric only and cannot take symbolic positions")]
    NonNumericKernel(&'static str),

    #[error("kernel precondition failed: {0}")]
    KernelPrecondition(String),

    #[error("set is not closed under composition: {0}")]
    NotClosed(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
