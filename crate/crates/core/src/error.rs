use thiserror::Error;

/// Errors surfaced by the library. Budget exhaustion is deliberately not
/// an error: enumeration reports it as a graph status.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u32),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("relation type error: {0}")]
    RelationType(String),
    #[error("not admissible at cap {cap}: a path of length {} survives", cap + 1)]
    NotAdmissible { cap: usize },
    #[error("quotient is zero")]
    QuotientZero,
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("non-split brick: {0}")]
    NonSplitBrick(String),
    #[error("not a left-mutable position: {0}")]
    NotLeftMutable(String),
    #[error("incomplete graph: enumeration stopped at the node budget")]
    IncompleteGraph,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
