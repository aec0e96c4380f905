use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("loop at vertex {0}")]
    Loop(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("vertex sets overlap at {0}")]
    Overlap(String),

    #[error("index out of bounds: {0}")]
    OutOfBounds(String),

    #[error("malformed division: {0}")]
    MalformedDivision(String),

    #[error("matrix of {rows}x{cols} exceeds the exhaustive limit {limit}")]
    OverLimit { rows: usize, cols: usize, limit: usize },

    #[error("search budget exhausted")]
    BudgetExhausted,

    #[error("invalid contraction sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("grid is not in general position: {0}")]
    NotGeneralPosition(String),

    #[error("grid does not hit segment {0}")]
    NotHit(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction mismatch: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
