use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partition of {{0..{n}}}: {reason}")]
    NotAPartition { n: usize, reason: String },

    #[error("E is not a refinement of F: E-block {block:?} meets more than one F-block")]
    NotNested { block: Vec<usize> },

    #[error("element {element} out of range for ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("class index {index} out of range ({classes} classes)")]
    ClassIndexOutOfRange { index: usize, classes: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape {0} is not a realizable local coarse shape")]
    NotInSc(String),

    #[error("shape {0} is not realizable")]
    NotRealizable(String),

    #[error("invalid local fine shape {0}")]
    InvalidFineShape(String),

    #[error("search space of size {size} exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("witness value {value} at index {index} out of range for target of size {n}")]
    Range {
        index: usize,
        value: usize,
        n: usize,
    },

    #[error("witness has {len} entries but source ground set has {n} elements")]
    WitnessLength { len: usize, n: usize },

    #[error("shape {0} has infinite entries and cannot be built on a finite ground set")]
    InfiniteShape(String),

    #[error("not a permutation of {{0..{n}}}: {reason}")]
    NotAPermutation { n: usize, reason: String },

    #[error("sub-generator {0} is not among the full generators")]
    NotSubset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
