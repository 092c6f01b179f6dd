use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Two vertices (or a vertex and a host) disagree on the number of coordinates.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An image vector is not a permutation of its index range.
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    /// A multigraph handed to the matching decomposition is not regular bipartite.
    #[error("not a regular bipartite multigraph: {0}")]
    NotRegular(String),

    /// An edge list violates the guest-graph invariants.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// The requested host dimension cannot accommodate the guest.
    #[error("host dimension {requested} is infeasible; minimal feasible d is {minimal}")]
    Infeasible { requested: usize, minimal: usize },

    /// An exact computation was requested beyond the supported size budget.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// A rejection-sampling loop ran out of attempts.
    #[error("resampling budget exhausted after {0} attempts")]
    RetryExhausted(usize),

    /// A text input could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A structured (JSON) input has the wrong shape.
    #[error("invalid file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
