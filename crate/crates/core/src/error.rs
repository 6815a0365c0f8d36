use thiserror::Error;

/// Errors raised by the numerical kernels, graph constructions and corpus pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{what} = {value} is out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },

    #[error("matrix is not symmetric: max |h_ij - h_ji| = {max_asymmetry:e} at ({row}, {col})")]
    NotSymmetric {
        max_asymmetry: f64,
        row: usize,
        col: usize,
    },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix must be nonnegative: entry ({row}, {col}) = {value}")]
    Negative { row: usize, col: usize, value: f64 },

    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },

    #[error("zero-degree vertices make the normalization undefined: {0:?}")]
    ZeroDegree(Vec<usize>),

    #[error("zero rows: {0:?}")]
    ZeroRows(Vec<usize>),

    #[error("zero columns: {0:?}")]
    ZeroColumns(Vec<usize>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("relevant document set is empty")]
    EmptyRelevant,

    #[error("query vector is zero (no query term matched the vocabulary)")]
    ZeroQuery,

    #[error("vocabulary is empty")]
    EmptyVocabulary,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
