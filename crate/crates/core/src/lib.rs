//! Exact maximum independent set solving by branch-and-reduce, plus the
//! measure-and-conquer machinery that certifies the solver's branching
//! factors for maximum degrees 6, 7 and 8.
//!
//! The crate is organized around the solver pipeline:
//!
//! * [`graph`]: dynamic simple graph with stable ids and the
//!   neighborhood statistics driving vertex selection,
//! * [`reductions`]: unconfined-vertex removal, folding and special
//!   line-graph elimination with a replayable [`trace`],
//! * [`matching`]: line-graph class detection, root-graph
//!   reconstruction and maximum matching,
//! * [`branching`]: vertex and edge branching and the optimal-vertex /
//!   optimal-short-edge selection rules,
//! * [`solver`]: the level-structured search, certificates and the
//!   brute-force oracle,
//! * [`analysis`]: weight vectors, recurrence catalogs, branching
//!   factors and weight optimization,
//! * [`families`]: graph constructors and seeded generators.

pub mod analysis;
pub mod branching;
pub mod families;
pub mod graph;
pub mod matching;
pub mod reductions;
pub mod solver;
pub mod trace;

pub use graph::{Graph, GraphError, NeighborhoodStats, VertexId};
pub use solver::{brute_force_mis, solve, Solution};
pub use trace::{SolveTrace, TraceEvent};
