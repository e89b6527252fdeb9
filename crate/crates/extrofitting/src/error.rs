//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("inconsistent vector dimension at line {line}: expected {expected}, found {found}")]
    InconsistentDimension {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("unparseable number at line {line}: {text:?}")]
    UnparseableNumber { line: usize, text: String },
    #[error("duplicate token {0:?}")]
    DuplicateToken(String),
    #[error("empty input")]
    EmptyInput,
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("class label {label} out of range (n_classes = {n_classes})")]
    LabelOutOfRange { label: usize, n_classes: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("within-class scatter cannot be made positive definite (last ridge tried: {ridge:e})")]
    RankDeficient { ridge: f64 },
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("singular denominator in objective")]
    SingularDenominator,
    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),
    #[error("degenerate lexicon: no synonym class with more than one member")]
    DegenerateLexicon,
    #[error("non-finite value produced while updating {0:?}")]
    NonFiniteUpdate(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("unparseable line {line}: {reason}")]
    UnparseableLine { line: usize, reason: String },
    #[error("wrong column count at line {line}: expected {expected}, found {found}")]
    WrongColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
