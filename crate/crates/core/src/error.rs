use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("dataset has no cases")]
    EmptyDataset,
    #[error("series too short: need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("case {case} has length {got}, expected {expected}")]
    UnequalLength {
        case: usize,
        expected: usize,
        got: usize,
    },
    #[error("label `{0}` is not a declared class")]
    UnknownLabel(String),
    #[error("incompatible datasets: {0}")]
    IncompatibleDatasets(String),
    #[error("non-finite value in input")]
    NonFiniteInput,
    #[error("shape mismatch: expected width {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("rank {k} out of range 1..={max}")]
    BadRank { k: usize, max: usize },
    #[error("insufficient data: need {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("comparison table has missing cells")]
    IncompleteTable,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
