use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph of order {n}")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("missing annotation: {0}")]
    MissingAnnotation(&'static str),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not a cactus: {0}")]
    NotACactus(String),

    #[error("unsupported graph class: {0}")]
    Unsupported(String),

    /// Parameters fall outside the range where a closed form or a construction applies.
    #[error("regime violation: {0}")]
    Regime(String),

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// No coloring exists; carries the first sub-interval failing the amplitude condition when known.
    #[error("no coloring exists: {0}")]
    Uncolorable(String),

    /// A colorer failed even though its hypotheses held.
    #[error("coloring failed under satisfied hypotheses: {0}")]
    TheoryContradiction(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
