use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph with {n} vertices exceeds the supported maximum of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph6 decode error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("{what} cap exceeded: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("graph is not a tree")]
    NotATree,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("cannot parse construction `{input}`: {reason}")]
    SpecParse { input: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
