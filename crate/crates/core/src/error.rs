use thiserror::Error;

/// Errors produced by graph construction, solving, and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("vertex id {0} is out of range")]
    UnknownVertex(usize),

    #[error("not a tree: the graph contains a cycle")]
    NotATree,

    #[error("not a forest: the graph contains a cycle")]
    NotAForest,

    #[error("forest: use the forest solver")]
    ForestInput,

    #[error("graph is empty or disconnected")]
    Disconnected,

    #[error("component threshold k={k} must satisfy 1 <= k <= {n}")]
    InvalidThreshold { k: usize, n: usize },

    #[error("graph has {n} vertices, above the enumeration cap of {cap}; raise the cap to force the search")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("graph has {n} vertices, above the {limit}-vertex hard limit of the subset oracle")]
    OracleHardLimit { n: usize, limit: usize },

    #[error("candidate set is not a failure set: {0}")]
    NotAFailureSet(String),

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
