use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    BadLength {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("empty matrix")]
    Empty,
    #[error("invalid tolerance {name} = {value}; must lie in (0, 1)")]
    InvalidTolerance { name: &'static str, value: f64 },
    #[error("no group inverse: index {index} exceeds 1")]
    NoGroupInverse { index: usize },
    #[error("no core inverse: index {index} exceeds 1")]
    NoCoreInverse { index: usize },
    #[error("core-nilpotent decomposition failed: reconstruction residual {residual:e}")]
    DecompositionFailure { residual: f64 },
    #[error("hypothesis failed: {what} (residual {residual:e})")]
    HypothesisFailed { what: &'static str, residual: f64 },
    #[error("the dual Drazin inverse does not exist")]
    NoDdgi,
    #[error("the dual group inverse does not exist")]
    NoDggi,
    #[error("the dual Moore-Penrose inverse does not exist")]
    NoDmpgi,
    #[error("the dual core inverse does not exist")]
    NoDcgi,
    #[error("inconsistent system: residual {residual:e}")]
    Inconsistent { residual: f64 },
    #[error("bad fixture parameters: {0}")]
    BadShapeParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
