use thiserror::Error;

use crate::graph::{Color, Vertex, Violation};

/// Structural and domain errors raised while building or transforming
/// graphs, colorings and instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("coloring has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color count {0} unsupported (must be between 1 and {max})", max = crate::MAX_COLORS)]
    UnsupportedColorCount(u32),
    #[error("color {color} outside 1..={k}")]
    ColorOutOfRange { color: Color, k: u32 },
    #[error("empty color list at vertex {0}")]
    EmptyList(Vertex),
    #[error("vertex {vertex} already has color {color}")]
    NoOpStep { vertex: Vertex, color: Color },
    #[error("{which} is not a proper list coloring: {violation}")]
    Improper {
        which: &'static str,
        violation: Violation,
    },
    #[error("{0}")]
    Domain(String),
}

impl CoreError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CoreError::Domain(msg.into())
    }
}

/// Outcomes of an exhaustive search that stopped before reaching a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exhausted after {explored} states")]
    BudgetExhausted { explored: u64 },
    #[error("deadline reached after {explored} states")]
    Deadline { explored: u64 },
}
