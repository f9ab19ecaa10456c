use thiserror::Error;

/// Everything that can go wrong while building, comparing or evaluating cells.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),
    #[error("globularity violated: {0}")]
    Globularity(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("ambiguous cell name `{0}` (present in several dimensions)")]
    AmbiguousCell(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("truncation exceeded: a cell of dimension {dim} would exceed truncation {truncation}")]
    TruncationExceeded { dim: usize, truncation: usize },
    #[error("duality index {index} out of range for truncation {truncation}")]
    Index { index: usize, truncation: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("composition depth {depth} must be below cell dimension {dim}")]
    Depth { depth: usize, dim: usize },
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("orbit bound of {0} states exceeded, equality undecided")]
    BoundExceeded(usize),
    #[error("contraction domain violated: {0}")]
    Domain(String),
    #[error("substitution incoherent: {0}")]
    Substitution(String),
    #[error("morphism error: {0}")]
    Morphism(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("window of {0} exceeded")]
    WindowExceeded(usize),
    #[error("evaluation assertion failed: {0}")]
    Evaluation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
