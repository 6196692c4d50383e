//! Polynomial-time reductions: removal of unconfined vertices, folding of
//! complete k-independent sets (k = 1, 2) and elimination of the special
//! line-graph components, applied exhaustively and logged to the trace.
//!
//! After `reduce` the graph contains no unconfined vertex, no complete
//! 1- or 2-independent set and no component from the three line-graph
//! classes; as a consequence its minimum degree is at least 3 (isolated
//! vertices are taken into the solution, a degree-1 vertex makes its
//! neighbor dominated hence unconfined, and degree-2 vertices fold).

use std::collections::BTreeSet;

use crate::graph::{Graph, GraphError, VertexId};
use crate::matching;
use crate::trace::{SolveTrace, TraceEvent};

/// Per-rule application counters, aggregated over a whole solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReductionCounts {
    pub isolated: u64,
    pub unconfined: u64,
    pub folded_independent: u64,
    pub folded_clique: u64,
    pub line_components: u64,
}

impl ReductionCounts {
    pub fn total(&self) -> u64 {
        self.isolated
            + self.unconfined
            + self.folded_independent
            + self.folded_clique
            + self.line_components
    }
}

/// The extending children of `v` (neighbors with exactly one neighbor
/// outside `N[v]`) and the set `S_v`: `v` together with all extending
/// grandchildren.
pub fn extending_set(g: &Graph, v: VertexId) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
    let closed = g.closed_neighborhood(&[v]);
    let mut children = BTreeSet::new();
    let mut s_v = BTreeSet::new();
    s_v.insert(v);
    for u in g.neighbors(v) {
        let mut outer = g.neighbors(u).filter(|z| !closed.contains(z));
        if let Some(first) = outer.next() {
            if outer.next().is_none() {
                children.insert(u);
                s_v.insert(first);
            }
        }
    }
    (children, s_v)
}

/// The simple unconfinedness test: some neighbor of `v` has no neighbor
/// outside `N[v]`, or the extending grandchildren are not independent.
/// Removing such a vertex preserves the independence number.
pub fn is_unconfined(g: &Graph, v: VertexId) -> bool {
    let closed = g.closed_neighborhood(&[v]);
    let mut grandchildren = BTreeSet::new();
    for u in g.neighbors(v) {
        let mut outer = g.neighbors(u).filter(|z| !closed.contains(z));
        match outer.next() {
            None => return true,
            Some(first) => {
                if outer.next().is_none() {
                    grandchildren.insert(first);
                }
            }
        }
    }
    !g.is_independent_set(&grandchildren)
}

/// Finds a complete k-independent set for `k` in {1, 2}: `k` vertices of
/// degree `k + 1` sharing one common neighborhood. Scans ascending ids.
pub fn find_complete_k_independent(g: &Graph, k: usize) -> Option<Vec<VertexId>> {
    assert!(k == 1 || k == 2, "only k = 1, 2 are folded");
    match k {
        1 => g.vertices().find(|&v| g.degree(v) == 2).map(|v| vec![v]),
        _ => {
            let candidates: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
            for (i, &v) in candidates.iter().enumerate() {
                let nv: BTreeSet<VertexId> = g.neighbors(v).collect();
                for &w in &candidates[i + 1..] {
                    if g.neighbors(w).collect::<BTreeSet<_>>() == nv {
                        return Some(vec![v, w]);
                    }
                }
            }
            None
        }
    }
}

/// Folds the complete k-independent set `a`: contracts `N[a]` when `N(a)`
/// is independent, deletes `N[a]` otherwise. Returns the folded graph and
/// the banked solution size `k`.
pub fn fold(
    g: &Graph,
    a: &[VertexId],
    trace: &mut SolveTrace,
) -> Result<(Graph, usize), GraphError> {
    let k = a.len();
    if k == 0 {
        return Err(GraphError::EmptySet);
    }
    for &v in a {
        if !g.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
    }
    // all members must have degree k+1 and one common neighborhood
    let first: BTreeSet<VertexId> = g.neighbors(a[0]).collect();
    let valid = k <= 2
        && first.len() == k + 1
        && a[1..]
            .iter()
            .all(|&v| g.neighbors(v).collect::<BTreeSet<_>>() == first);
    if !valid {
        return Err(GraphError::NotFoldable(a.to_vec()));
    }
    let nbhd: Vec<VertexId> = g.open_neighborhood(a).into_iter().collect();
    let closed: Vec<VertexId> = g.closed_neighborhood(a).into_iter().collect();
    if g.is_independent_set(&nbhd) {
        let (folded, c) = g.contract_set(&closed)?;
        trace.push(TraceEvent::FoldedIndependent {
            set: a.to_vec(),
            neighborhood: nbhd,
            contracted: c,
        });
        Ok((folded, k))
    } else {
        let folded = g.delete_vertices(&closed)?;
        trace.push(TraceEvent::FoldedClique {
            set: a.to_vec(),
            neighborhood: nbhd,
        });
        Ok((folded, k))
    }
}

/// Runs the reduction loop to a fixed point: line-graph components first,
/// then isolated/unconfined vertices, then folding, restarting from the
/// top after every change. Returns the reduced graph and the banked
/// solution size.
pub fn reduce(g: &Graph, trace: &mut SolveTrace) -> (Graph, usize) {
    let mut counts = ReductionCounts::default();
    reduce_counting(g, trace, &mut counts)
}

/// As [`reduce`], also accumulating per-rule counters.
pub fn reduce_counting(
    g: &Graph,
    trace: &mut SolveTrace,
    counts: &mut ReductionCounts,
) -> (Graph, usize) {
    let mut h = g.clone();
    let mut banked = 0usize;
    while let Some((next, gained)) = reduce_step(&h, trace, counts) {
        debug_assert!(next.order() + next.size() < h.order() + h.size());
        h = next;
        banked += gained;
    }
    debug_assert!(h.audit().is_ok());
    debug_assert!(h.vertices().all(|v| h.degree(v) >= 3));
    (h, banked)
}

/// Applies the single highest-priority reduction, or `None` on a reduced
/// graph. Rules scan components and vertices in ascending order, so the
/// step sequence is deterministic.
pub fn reduce_step(
    g: &Graph,
    trace: &mut SolveTrace,
    counts: &mut ReductionCounts,
) -> Option<(Graph, usize)> {
    // Step 1: special line-graph components
    if g.max_degree() >= 6 {
        for comp in g.components() {
            if let Some((alpha, chosen)) = matching::solve_line_component(g, &comp) {
                let next = g.delete_vertices(&comp).unwrap();
                counts.line_components += 1;
                trace.push(TraceEvent::LineComponent {
                    vertices: comp,
                    chosen,
                });
                return Some((next, alpha));
            }
        }
    }
    // Step 2: isolated and unconfined vertices
    for v in g.vertices() {
        if g.degree(v) == 0 {
            let next = g.delete_vertices(&[v]).unwrap();
            counts.isolated += 1;
            trace.push(TraceEvent::RemovedIsolated { vertex: v });
            return Some((next, 1));
        }
        if is_unconfined(g, v) {
            let next = g.delete_vertices(&[v]).unwrap();
            counts.unconfined += 1;
            trace.push(TraceEvent::RemovedUnconfined { vertex: v });
            return Some((next, 0));
        }
    }
    // Step 3: folding, k = 1 before k = 2
    for k in [1, 2] {
        if let Some(a) = find_complete_k_independent(g, k) {
            let (folded, gained) = fold(g, &a, trace).expect("candidate set is foldable");
            match trace.events().last() {
                Some(TraceEvent::FoldedIndependent { .. }) => counts.folded_independent += 1,
                _ => counts.folded_clique += 1,
            }
            return Some((folded, gained));
        }
    }
    None
}

/// Definition-level audit used by tests: a reduced graph admits none of
/// the three rules.
pub fn is_reduced(g: &Graph) -> bool {
    if g.vertices()
        .any(|v| g.degree(v) == 0 || is_unconfined(g, v))
    {
        return false;
    }
    if find_complete_k_independent(g, 1).is_some() || find_complete_k_independent(g, 2).is_some() {
        return false;
    }
    g.components()
        .iter()
        .all(|c| matching::detect_line_class(g, c).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::solver::brute_force_mis;

    #[test]
    fn extending_set_on_cycle() {
        let g = families::cycle(5);
        let (n_star, s_v) = extending_set(&g, 0);
        assert_eq!(n_star.into_iter().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(s_v.into_iter().collect::<Vec<_>>(), vec![0, 2, 3]);
    }

    #[test]
    fn extending_set_trivial_cases() {
        let k4 = families::complete(4);
        let (n_star, s_v) = extending_set(&k4, 0);
        assert!(n_star.is_empty());
        assert_eq!(s_v.into_iter().collect::<Vec<_>>(), vec![0]);

        let star = families::complete_bipartite(1, 3);
        let (n_star, s_v) = extending_set(&star, 0);
        assert!(n_star.is_empty());
        assert_eq!(s_v.into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn unconfined_examples() {
        let k4 = families::complete(4);
        assert!(is_unconfined(&k4, 0));
        let c5 = families::cycle(5);
        assert!(is_unconfined(&c5, 0));
        let c6 = families::cycle(6);
        assert!(!is_unconfined(&c6, 0));
    }

    #[test]
    fn unconfined_removal_preserves_alpha() {
        let c5 = families::cycle(5);
        let (a0, _) = brute_force_mis(&c5).unwrap();
        let (a1, _) = brute_force_mis(&c5.delete_vertices(&[0]).unwrap()).unwrap();
        assert_eq!((a0, a1), (2, 2));

        let k4 = families::complete(4);
        let (b0, _) = brute_force_mis(&k4).unwrap();
        let (b1, _) = brute_force_mis(&k4.delete_vertices(&[0]).unwrap()).unwrap();
        assert_eq!((b0, b1), (1, 1));
    }

    #[test]
    fn complete_k_independent_detection() {
        let p3 = families::path(3);
        assert_eq!(find_complete_k_independent(&p3, 1), Some(vec![1]));

        let k23 = families::complete_bipartite(2, 3);
        assert_eq!(find_complete_k_independent(&k23, 2), Some(vec![0, 1]));

        let pet = families::petersen();
        assert_eq!(find_complete_k_independent(&pet, 1), None);
        assert_eq!(find_complete_k_independent(&pet, 2), None);
    }

    #[test]
    fn fold_path_contracts() {
        let p3 = families::path(3);
        let mut trace = SolveTrace::new();
        let (g, gained) = fold(&p3, &[1], &mut trace).unwrap();
        assert_eq!(gained, 1);
        assert_eq!(g.order(), 1);
        assert!(matches!(
            trace.events()[0],
            TraceEvent::FoldedIndependent { contracted: 3, .. }
        ));
    }

    #[test]
    fn fold_triangle_deletes() {
        let k3 = families::complete(3);
        let mut trace = SolveTrace::new();
        let (g, gained) = fold(&k3, &[1], &mut trace).unwrap();
        assert_eq!(gained, 1);
        assert!(g.is_empty());
        assert!(matches!(trace.events()[0], TraceEvent::FoldedClique { .. }));
    }

    #[test]
    fn fold_k23_contracts_to_single_vertex() {
        let k23 = families::complete_bipartite(2, 3);
        let mut trace = SolveTrace::new();
        let (g, gained) = fold(&k23, &[0, 1], &mut trace).unwrap();
        assert_eq!(gained, 2);
        assert_eq!(g.order(), 1);
        // alpha(K2,3) = 3 = alpha(K1) + 2
    }

    #[test]
    fn reduce_solves_c5_outright() {
        let c5 = families::cycle(5);
        let mut trace = SolveTrace::new();
        let (g, s) = reduce(&c5, &mut trace);
        assert!(g.is_empty());
        assert_eq!(s, 2);
    }

    #[test]
    fn petersen_is_already_reduced() {
        let pet = families::petersen();
        let mut trace = SolveTrace::new();
        let (g, s) = reduce(&pet, &mut trace);
        assert_eq!(s, 0);
        assert_eq!(g.order(), 10);
        assert!(trace.is_empty());
        assert!(is_reduced(&g));
    }

    #[test]
    fn reduce_removes_line_component() {
        let lk5 = families::line_of_complete(5);
        let mut trace = SolveTrace::new();
        let (g, s) = reduce(&lk5, &mut trace);
        assert!(g.is_empty());
        assert_eq!(s, 2, "matching number of K5");
        assert!(matches!(
            trace.events()[0],
            TraceEvent::LineComponent { .. }
        ));
    }
}
