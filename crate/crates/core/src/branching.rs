//! Branching rules and selection: vertex branching through the extending
//! set, edge branching on short edges through the joined graph, and the
//! per-level optimal-vertex and optimal-short-edge selection rules.

use std::collections::BTreeSet;

use crate::graph::{Graph, GraphError, NeighborhoodStats, VertexId};
use crate::reductions::extending_set;

/// A committed branching decision, carrying everything needed to build
/// the two subproblems and later invert the winning side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchPlan {
    Vertex {
        v: VertexId,
        s_v: Vec<VertexId>,
    },
    Edge {
        v: VertexId,
        w: VertexId,
        common: Vec<VertexId>,
        left: Vec<VertexId>,
        right: Vec<VertexId>,
    },
}

/// The vertex-branch bookkeeping: the branch vertex and its extending
/// set `S_v` (which always contains `v`).
pub fn vertex_branch_plan(g: &Graph, v: VertexId) -> BranchPlan {
    let (_, s_v) = extending_set(g, v);
    BranchPlan::Vertex {
        v,
        s_v: s_v.into_iter().collect(),
    }
}

/// Builds the two vertex-branch subproblems: exclude `v`, or include the
/// whole extending set `S_v`. Returns `(G - v, G - N[S_v], |S_v|)`.
pub fn vertex_branch_subproblems(g: &Graph, v: VertexId) -> (Graph, Graph, usize) {
    let BranchPlan::Vertex { s_v, .. } = vertex_branch_plan(g, v) else {
        unreachable!()
    };
    let excl = g.delete_vertices(&[v]).expect("live branch vertex");
    let closed: Vec<VertexId> = g.closed_neighborhood(&s_v).into_iter().collect();
    let incl = g.delete_vertices(&closed).expect("live extending set");
    (excl, incl, s_v.len())
}

/// All short edges of a maximum-degree-`theta` graph, canonically
/// oriented (higher-degree endpoint first, then smaller id) and sorted.
///
/// For theta = 6 an edge is short when one endpoint has degree 6, the
/// other degree 5 or 6, and they share at least 3 neighbors; for
/// theta = 7, 8 both endpoints must have degree theta and share at
/// least 4 neighbors.
pub fn find_short_edges(g: &Graph, theta: usize) -> Vec<(VertexId, VertexId)> {
    debug_assert!((6..=8).contains(&theta));
    let mut out = Vec::new();
    for (a, b) in g.edge_list() {
        let (da, db) = (g.degree(a), g.degree(b));
        let (v, w, dw) = if da >= db { (a, b, db) } else { (b, a, da) };
        let qualifies = if theta == 6 {
            g.degree(v) == 6 && (5..=6).contains(&dw)
        } else {
            g.degree(v) == theta && dw == theta
        };
        if !qualifies {
            continue;
        }
        let need = if theta == 6 { 3 } else { 4 };
        if g.common_neighbors(v, w).len() >= need {
            out.push((v, w));
        }
    }
    out.sort_unstable();
    out
}

/// Picks the optimal short edge: maximal `|N(v) ∩ N(v')| - δ(v')`, ties
/// broken by the smallest `(v, v')` pair.
pub fn select_optimal_short_edge(
    edges: &[(VertexId, VertexId)],
    g: &Graph,
) -> Result<(VertexId, VertexId), GraphError> {
    let mut best: Option<(i64, (VertexId, VertexId))> = None;
    for &(v, w) in edges {
        let score = g.common_neighbors(v, w).len() as i64 - g.degree(w) as i64;
        let better = match best {
            None => true,
            Some((s, e)) => score > s || (score == s && (v, w) < e),
        };
        if better {
            best = Some((score, (v, w)));
        }
    }
    best.map(|(_, e)| e).ok_or(GraphError::EmptySet)
}

/// Builds the two edge-branch subproblems for the adjacent pair `(v, w)`:
/// `G - {v, w}`, and the joined graph obtained by removing `{v, w}` and
/// their common neighbors and making the two exclusive neighborhoods
/// complete to each other. `alpha(G) = max(alpha(first), alpha(second)+1)`.
pub fn edge_branch_subproblems(
    g: &Graph,
    v: VertexId,
    w: VertexId,
) -> Result<(Graph, Graph), GraphError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v));
    }
    if !g.contains(w) {
        return Err(GraphError::UnknownVertex(w));
    }
    if !g.has_edge(v, w) {
        return Err(GraphError::NotAdjacent(v, w));
    }
    let plan = edge_branch_plan(g, v, w);
    let BranchPlan::Edge {
        common,
        left,
        right,
        ..
    } = &plan
    else {
        unreachable!()
    };
    let deleted = g.delete_vertices(&[v, w])?;
    let mut removed = vec![v, w];
    removed.extend(common.iter().copied());
    let mut joined = g.delete_vertices(&removed)?;
    for &a in left {
        for &b in right {
            joined.add_edge(a, b)?; // no-op result when already adjacent
        }
    }
    debug_assert!(joined.audit().is_ok());
    Ok((deleted, joined))
}

/// The edge-branch bookkeeping: common neighbors and the two exclusive
/// neighborhoods `N(v) - N[w]` and `N(w) - N[v]`.
pub fn edge_branch_plan(g: &Graph, v: VertexId, w: VertexId) -> BranchPlan {
    let common: Vec<VertexId> = g.common_neighbors(v, w).into_iter().collect();
    let common_set: BTreeSet<VertexId> = common.iter().copied().collect();
    let left: Vec<VertexId> = g
        .neighbors(v)
        .filter(|&u| u != w && !common_set.contains(&u))
        .collect();
    let right: Vec<VertexId> = g
        .neighbors(w)
        .filter(|&u| u != v && !common_set.contains(&u))
        .collect();
    BranchPlan::Edge {
        v,
        w,
        common,
        left,
        right,
    }
}

/// Selects an optimal degree-theta vertex of a reduced, short-edge-free
/// graph of maximum degree theta. Clauses are tried in the listed order;
/// within a clause the smallest id wins. Returns `None` only if no
/// clause matches any vertex, which the structural guarantees rule out
/// on inputs meeting the preconditions.
pub fn select_optimal_vertex(g: &Graph, theta: usize) -> Option<VertexId> {
    debug_assert!((6..=8).contains(&theta));
    let candidates: Vec<(VertexId, NeighborhoodStats)> = g
        .vertices()
        .filter(|&v| g.degree(v) == theta)
        .map(|v| (v, g.neighborhood_stats(v).expect("live vertex")))
        .collect();
    let clause_count = match theta {
        6 => 6,
        7 => 4,
        _ => 2,
    };
    for clause in 0..clause_count {
        for (v, st) in &candidates {
            let hit = match theta {
                6 => optimal6_clause(clause, st),
                7 => optimal7_clause(clause, g, *v, st),
                _ => optimal8_clause(clause, st),
            };
            if hit {
                return Some(*v);
            }
        }
    }
    None
}

fn optimal6_clause(clause: usize, st: &NeighborhoodStats) -> bool {
    let score = st.boundary_surplus() + st.low_degree_count;
    match clause {
        0 => st.k(3) >= 1 || st.k(6) <= 3,
        1 => st.k(6) == 4 && st.k(5) <= 1,
        2 => st.k(6) == 4 && st.k(5) == 2 && score >= 17,
        3 => st.k(6) == 5 && st.k(4) == 1 && score >= 18,
        4 => st.k(6) == 5 && st.k(5) == 1 && score >= 19,
        _ => st.k(6) == 6 && score >= 22,
    }
}

fn optimal7_clause(clause: usize, g: &Graph, v: VertexId, st: &NeighborhoodStats) -> bool {
    match clause {
        0 => !extending_set(g, v).0.is_empty(),
        1 => st.k(7) <= 5,
        2 => st.k(7) == 6 && st.boundary_surplus() + 2 * st.k(3) + st.k(4) >= 22,
        _ => st.k(7) == 7 && st.boundary_surplus() >= 26,
    }
}

fn optimal8_clause(clause: usize, st: &NeighborhoodStats) -> bool {
    match clause {
        0 => st.k(8) <= 7,
        _ => st.k(8) == 8 && st.boundary_surplus() >= 36,
    }
}
