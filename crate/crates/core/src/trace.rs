//! Solve trace: the ordered log of reductions and branch decisions that
//! lets a solution of the reduced graph be lifted back to the original.

use crate::graph::VertexId;

/// One reversible transformation applied during solving. Every variant
/// stores enough original ids to invert itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// An unconfined vertex was deleted; the solution is unaffected.
    RemovedUnconfined { vertex: VertexId },
    /// A degree-0 vertex was taken into the solution and deleted.
    RemovedIsolated { vertex: VertexId },
    /// A complete k-independent set `set` with independent neighborhood
    /// was folded: `N[set]` was contracted into `contracted`.
    FoldedIndependent {
        set: Vec<VertexId>,
        neighborhood: Vec<VertexId>,
        contracted: VertexId,
    },
    /// A complete k-independent set `set` whose neighborhood spans an
    /// edge was folded by deleting `N[set]`.
    FoldedClique {
        set: Vec<VertexId>,
        neighborhood: Vec<VertexId>,
    },
    /// A component recognized as one of the special line-graph classes
    /// was solved by matching and removed; `chosen` is its solution.
    LineComponent {
        vertices: Vec<VertexId>,
        chosen: Vec<VertexId>,
    },
    /// Winning edge branch that excluded both endpoints.
    EdgeBranchLeft { v: VertexId, w: VertexId },
    /// Winning edge branch through the joined graph: one endpoint enters
    /// the solution, decided by whether the sub-solution touches `left`.
    EdgeBranchRight {
        v: VertexId,
        w: VertexId,
        common: Vec<VertexId>,
        left: Vec<VertexId>,
        right: Vec<VertexId>,
    },
    /// Winning vertex branch that excluded the vertex.
    VertexBranchExclude { vertex: VertexId },
    /// Winning vertex branch that committed the extending set.
    VertexBranchInclude { set: Vec<VertexId> },
}

/// Ordered event log for one solve node.
#[derive(Debug, Clone, Default)]
pub struct SolveTrace {
    events: Vec<TraceEvent>,
}

impl SolveTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, ev: TraceEvent) {
        self.events.push(ev);
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }
}
