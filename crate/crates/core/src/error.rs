use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An algorithm tried to cross an edge the environment knows is blocked.
    #[error("blocked-edge traversal: {{{from},{to}}}")]
    BlockedTraversal { from: VertexId, to: VertexId },

    /// An algorithm tried to cross an edge whose state has not been revealed.
    #[error("unrevealed-edge traversal: {{{from},{to}}}")]
    UnrevealedTraversal { from: VertexId, to: VertexId },

    #[error("invalid move from {from} to {to}: {reason}")]
    InvalidMove {
        from: VertexId,
        to: VertexId,
        reason: &'static str,
    },

    #[error("information contract violated: {0}")]
    InformationLeak(String),

    #[error("unblocked subgraph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("cannot keep graph connected: n={n}, k={k} ({reason})")]
    CannotKeepConnected { n: usize, k: usize, reason: String },

    #[error("instance of {size} vertices exceeds {what} limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("exploration inconsistency: {0}")]
    Inconsistent(String),

    #[error("trace replay mismatch at move {index}: {reason}")]
    ReplayMismatch { index: usize, reason: String },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input rather than a bug in an algorithm.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Disconnected { .. }
                | Error::InvalidScenario(_)
                | Error::CannotKeepConnected { .. }
                | Error::TooLarge { .. }
                | Error::InvalidTour(_)
                | Error::OutOfRange(_)
                | Error::Format(_)
                | Error::Json(_)
        )
    }
}
