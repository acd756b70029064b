use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("{what} supports at most {limit} nodes, got {actual}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("block cut forest has {0} components, expected a tree")]
    NotATree(usize),

    #[error("graph is not distance-regular")]
    NotDistanceRegular,

    #[error("colorings come from different interning contexts")]
    ContextMismatch,

    #[error("substructure must be connected and non-empty")]
    InvalidSubstructure,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generator gave up after {0} attempts")]
    Infeasible(usize),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
