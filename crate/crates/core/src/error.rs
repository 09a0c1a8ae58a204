use thiserror::Error;

/// Errors produced by matrix construction, the representation calculus and
/// the membership oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("matrix asymmetry {asymmetry:e} exceeds tolerance {tolerance:e}")]
    Asymmetric { asymmetry: f64, tolerance: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("no blocks")]
    NoBlocks,

    #[error("{what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("ambient dimension must be at least 1")]
    ZeroAmbient,

    #[error("cannot slice to ambient dimension 0")]
    SliceToZero,

    #[error("block sizes {blocks:?} do not describe the matrix layout: {reason}")]
    BadBlocks { blocks: Vec<usize>, reason: String },

    #[error("empty list of representations")]
    EmptyList,

    #[error("grid oracle infeasible for {lifted} lifted variables (limit {limit})")]
    GridTooLarge { lifted: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
