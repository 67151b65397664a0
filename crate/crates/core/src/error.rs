use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("polygon is not simple")]
    NonSimplePolygon,
    #[error("dart sequence is not a closed walk (break after position {0})")]
    NotClosed(usize),
    #[error("graphs differ: {0}")]
    GraphMismatch(String),
    #[error("not a valid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("linear system is singular: {0}")]
    Singular(String),
    #[error("vertex {0} is incident to a loop")]
    LoopVertex(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("drawings are not isotopic (witness dart {witness})")]
    NotIsotopic { witness: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
