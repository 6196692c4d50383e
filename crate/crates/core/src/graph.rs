//! Dynamic simple undirected graph with stable vertex identities.
//!
//! Vertex ids are never reused: deletion leaves a hole, contraction
//! allocates a fresh id. This keeps solve traces unambiguous when they
//! refer back to vertices of the original instance.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Stable vertex identifier. Ids are dense in a fresh graph and grow
/// monotonically as contractions allocate new vertices.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex set must not be empty")]
    EmptySet,
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("{0:?} is not a complete k-independent set")]
    NotFoldable(Vec<VertexId>),
}

/// Per-vertex neighborhood statistics used by the branching selection rules.
///
/// For a vertex `v` in a graph of maximum degree `d`:
/// * `inner_edges` is the number of edges inside `G[N(v)]`,
/// * `boundary_edges` counts edges between `N(v)` and the second
///   neighborhood,
/// * `second_size` is `|N2(v)|`,
/// * `low_degree_count` is the number of second-neighborhood vertices of
///   degree strictly below `d` (re-evaluated against the current graph),
/// * `degree_counts[i]` is the number of degree-`i` neighbors of `v`
///   (indices `0..=d`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodStats {
    pub degree: usize,
    pub inner_edges: usize,
    pub boundary_edges: usize,
    pub second_size: usize,
    pub low_degree_count: usize,
    pub degree_counts: Vec<usize>,
}

impl NeighborhoodStats {
    /// Count of degree-`i` neighbors, zero when `i` is out of range.
    pub fn k(&self, i: usize) -> usize {
        self.degree_counts.get(i).copied().unwrap_or(0)
    }

    /// `f_v + (f_v - |N2(v)|)`, the surplus term of the selection rules.
    pub fn boundary_surplus(&self) -> usize {
        2 * self.boundary_edges - self.second_size
    }
}

/// Simple undirected graph; adjacency is kept as sorted sets so iteration
/// order (and therefore every downstream decision) is deterministic.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Option<BTreeSet<VertexId>>>,
    live: usize,
    edges: usize,
}

impl Graph {
    /// Graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| Some(BTreeSet::new())).collect(),
            live: n,
            edges: 0,
        }
    }

    /// Builds a graph on vertices `0..n` from an edge list.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Number of live vertices.
    pub fn order(&self) -> usize {
        self.live
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// One past the largest id ever allocated.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.get(v).is_some_and(|s| s.is_some())
    }

    fn adj_of(&self, v: VertexId) -> &BTreeSet<VertexId> {
        self.adj[v].as_ref().expect("vertex must be live")
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|_| i))
    }

    /// Neighbors of `v` in ascending id order. Panics on a dead vertex.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj_of(v).iter().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj_of(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.adj_of(u).contains(&v)
    }

    /// Allocates a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Some(BTreeSet::new()));
        self.live += 1;
        self.adj.len() - 1
    }

    /// Inserts the edge `uv`; returns `false` when it was already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.check(u)?;
        self.check(v)?;
        let inserted = self.adj[u].as_mut().unwrap().insert(v);
        self.adj[v].as_mut().unwrap().insert(u);
        if inserted {
            self.edges += 1;
        }
        Ok(inserted)
    }

    /// Removes `v` together with its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        self.check(v)?;
        let nbrs = self.adj[v].take().unwrap();
        self.edges -= nbrs.len();
        for u in nbrs {
            self.adj[u].as_mut().unwrap().remove(&v);
        }
        self.live -= 1;
        Ok(())
    }

    /// `G - X`: the graph with `xs` (and incident edges) removed.
    pub fn delete_vertices(&self, xs: &[VertexId]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &v in xs {
            g.remove_vertex(v)?;
        }
        debug_assert!(g.audit().is_ok());
        Ok(g)
    }

    /// `G / X`: contracts `xs` into a single fresh vertex adjacent to
    /// `N(X)`; self-loops and parallel edges vanish by construction.
    pub fn contract_set(&self, xs: &[VertexId]) -> Result<(Graph, VertexId), GraphError> {
        if xs.is_empty() {
            return Err(GraphError::EmptySet);
        }
        for &v in xs {
            self.check(v)?;
        }
        let boundary = self.open_neighborhood(xs);
        let mut g = self.clone();
        for &v in xs {
            // duplicates in xs would fail here, which is the right outcome
            g.remove_vertex(v)?;
        }
        let c = g.add_vertex();
        for u in boundary {
            g.add_edge(c, u).unwrap();
        }
        debug_assert!(g.audit().is_ok());
        Ok((g, c))
    }

    /// `N(X)`: all live vertices outside `xs` adjacent to some member.
    pub fn open_neighborhood(&self, xs: &[VertexId]) -> BTreeSet<VertexId> {
        let set: BTreeSet<VertexId> = xs.iter().copied().collect();
        let mut out = BTreeSet::new();
        for &v in &set {
            for u in self.neighbors(v) {
                if !set.contains(&u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// `N[X] = X ∪ N(X)`.
    pub fn closed_neighborhood(&self, xs: &[VertexId]) -> BTreeSet<VertexId> {
        let mut out = self.open_neighborhood(xs);
        out.extend(xs.iter().copied());
        out
    }

    /// Vertices at distance exactly two from `v`.
    pub fn second_neighborhood(&self, v: VertexId) -> BTreeSet<VertexId> {
        let closed = self.closed_neighborhood(&[v]);
        let mut out = BTreeSet::new();
        for u in self.neighbors(v) {
            for z in self.neighbors(u) {
                if !closed.contains(&z) {
                    out.insert(z);
                }
            }
        }
        out
    }

    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> BTreeSet<VertexId> {
        self.adj_of(u)
            .intersection(self.adj_of(v))
            .copied()
            .collect()
    }

    /// Degree, inner/boundary edge counts, second-neighborhood size, the
    /// low-degree count `q_v` and the neighbor-degree vector, all against
    /// the current graph and its current maximum degree.
    pub fn neighborhood_stats(&self, v: VertexId) -> Result<NeighborhoodStats, GraphError> {
        self.check(v)?;
        let max_deg = self.max_degree();
        let nbrs = self.adj_of(v);
        let second = self.second_neighborhood(v);

        let mut inner = 0;
        let mut boundary = 0;
        let mut counts = vec![0usize; max_deg + 1];
        for &u in nbrs {
            counts[self.degree(u)] += 1;
            for z in self.neighbors(u) {
                if z > u && nbrs.contains(&z) {
                    inner += 1;
                }
                if second.contains(&z) {
                    boundary += 1;
                }
            }
        }
        let low = second.iter().filter(|&&z| self.degree(z) < max_deg).count();
        Ok(NeighborhoodStats {
            degree: nbrs.len(),
            inner_edges: inner,
            boundary_edges: boundary,
            second_size: second.len(),
            low_degree_count: low,
            degree_counts: counts,
        })
    }

    /// Is `xs` an independent set (pairwise non-adjacent, all live)?
    pub fn is_independent_set<'a, I>(&self, xs: I) -> bool
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let set: Vec<VertexId> = xs.into_iter().copied().collect();
        for (i, &u) in set.iter().enumerate() {
            if !self.contains(u) {
                return false;
            }
            for &w in &set[i + 1..] {
                if self.has_edge(u, w) {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components, each sorted ascending, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen[v] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for z in self.neighbors(u) {
                    if !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subgraph induced by `keep`, preserving vertex ids.
    pub fn induced(&self, keep: &[VertexId]) -> Graph {
        let keep_set: BTreeSet<VertexId> = keep.iter().copied().collect();
        let mut g = self.clone();
        let drop: Vec<VertexId> = self.vertices().filter(|v| !keep_set.contains(v)).collect();
        for v in drop {
            g.remove_vertex(v).unwrap();
        }
        g
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edges);
        for v in self.vertices() {
            for u in self.neighbors(v) {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    /// Full structural audit: symmetry, simplicity, consistent counters.
    pub fn audit(&self) -> Result<(), String> {
        let mut live = 0;
        let mut half_edges = 0;
        for (v, slot) in self.adj.iter().enumerate() {
            let Some(nbrs) = slot else { continue };
            live += 1;
            half_edges += nbrs.len();
            for &u in nbrs {
                if u == v {
                    return Err(format!("self-loop at {v}"));
                }
                if !self.contains(u) {
                    return Err(format!("edge {v}-{u} points at a dead vertex"));
                }
                if !self.adj_of(u).contains(&v) {
                    return Err(format!("asymmetric edge {v}-{u}"));
                }
            }
        }
        if live != self.live {
            return Err(format!("live counter {} != {}", self.live, live));
        }
        if half_edges != 2 * self.edges {
            return Err(format!("edge counter {} != {}", self.edges, half_edges / 2));
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={};", self.live, self.edges)?;
        for v in self.vertices() {
            let nbrs: Vec<VertexId> = self.neighbors(v).collect();
            write!(f, " {v}:{nbrs:?}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn delete_from_triangle_leaves_edge() {
        let k3 = families::complete(3);
        let g = k3.delete_vertices(&[0]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.size(), 1);
        assert!(g.has_edge(1, 2));
    }

    #[test]
    fn cycle_minus_vertex_is_path() {
        let c5 = families::cycle(5);
        let g = c5.delete_vertices(&[0]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 3);
        assert_eq!(g.vertices().filter(|&v| g.degree(v) == 1).count(), 2);
    }

    #[test]
    fn path_minus_endpoints_is_isolated_middle() {
        let p3 = families::path(3);
        let g = p3.delete_vertices(&[0, 2]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.size(), 0);
        assert!(g.contains(1));
    }

    #[test]
    fn delete_unknown_vertex_errors() {
        let g = families::path(3);
        assert_eq!(g.delete_vertices(&[7]), Err(GraphError::UnknownVertex(7)));
    }

    #[test]
    fn contract_whole_path_gives_isolated_vertex() {
        let p3 = families::path(3);
        let (g, c) = p3.contract_set(&[0, 1, 2]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.degree(c), 0);
    }

    #[test]
    fn contract_opposite_cycle_vertices() {
        // C4 0-1-2-3-0; contracting {0,2} joins the new vertex to 1 and 3
        let c4 = families::cycle(4);
        let (g, c) = c4.contract_set(&[0, 2]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.degree(c), 2);
        assert!(g.has_edge(c, 1) && g.has_edge(c, 3));
        assert!(!g.has_edge(1, 3));
    }

    #[test]
    fn contract_inside_clique() {
        let k4 = families::complete(4);
        let (g, c) = k4.contract_set(&[0, 1]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.size(), 3);
        assert_eq!(g.degree(c), 2);
    }

    #[test]
    fn contract_empty_set_errors() {
        let g = families::path(3);
        assert_eq!(g.contract_set(&[]).err(), Some(GraphError::EmptySet));
    }

    #[test]
    fn petersen_stats() {
        let g = families::petersen();
        for v in g.vertices() {
            let st = g.neighborhood_stats(v).unwrap();
            assert_eq!(st.degree, 3);
            assert_eq!(st.inner_edges, 0);
            assert_eq!(st.boundary_edges, 6);
            assert_eq!(st.second_size, 6);
            assert_eq!(st.low_degree_count, 0);
            assert_eq!(st.k(3), 3);
        }
    }

    #[test]
    fn complete_graph_stats() {
        let g = families::complete(7);
        let st = g.neighborhood_stats(0).unwrap();
        assert_eq!(st.degree, 6);
        assert_eq!(st.inner_edges, 15);
        assert_eq!(st.boundary_edges, 0);
        assert_eq!(st.second_size, 0);
        assert_eq!(st.k(6), 6);
    }

    #[test]
    fn star_center_stats() {
        let g = families::complete_bipartite(1, 4);
        let st = g.neighborhood_stats(0).unwrap();
        assert_eq!(st.degree, 4);
        assert_eq!(st.inner_edges, 0);
        assert_eq!(st.boundary_edges, 0);
        assert_eq!(st.second_size, 0);
        assert_eq!(st.k(1), 4);
    }

    #[test]
    fn second_neighborhood_on_cycle() {
        let g = families::cycle(6);
        let n2: Vec<VertexId> = g.second_neighborhood(0).into_iter().collect();
        assert_eq!(n2, vec![2, 4]);
    }

    #[test]
    fn second_neighborhood_of_clique_is_empty() {
        let g = families::complete(4);
        assert!(g.second_neighborhood(2).is_empty());
    }

    #[test]
    fn petersen_second_neighborhood_size() {
        let g = families::petersen();
        for v in g.vertices() {
            assert_eq!(g.second_neighborhood(v).len(), 6);
        }
    }
}
