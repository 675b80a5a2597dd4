use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point cloud must have at least one row and one column (got {rows}x{cols})")]
    EmptyCloud { rows: usize, cols: usize },
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("row index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inconsistent cover: {0}")]
    InconsistentCover(String),
    #[error("inconsistent graph: {0}")]
    InconsistentGraph(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
