use thiserror::Error;

use crate::graph::VertexSet;
use crate::model::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("vertex {vertex} is not in the model (n = {n})")]
    UnknownVertex { vertex: Vertex, n: usize },

    #[error("vertex sets overlap at vertex {0}")]
    Overlap(Vertex),

    #[error("{0}")]
    Domain(String),

    /// Exact enumeration was asked to sum over more free spins than allowed.
    #[error("exact inference over {free} free vertices exceeds the cap of {cap}")]
    Capacity { free: usize, cap: usize },

    #[error("ball B({cluster}, {radius}) has {ball} vertices, above the exact cap of {cap}")]
    BallTooLarge {
        cluster: VertexSet,
        radius: usize,
        ball: usize,
        cap: usize,
    },

    #[error("model is not in the requested family: {0}")]
    NotInFamily(String),

    #[error("malformed solution: {0}")]
    MalformedSolution(String),

    #[error("binary search did not converge after {} probes", probes.len())]
    NonConvergence { probes: Vec<(f64, crate::reduction::Direction)> },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for the two capacity variants.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::BallTooLarge { .. })
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
