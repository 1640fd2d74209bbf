use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("invalid rotation system: {0}")]
    Rotation(String),
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("timed out after {0} ms")]
    Timeout(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
