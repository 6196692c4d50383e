//! Detection and exact solution of the three special line-graph component
//! classes: line graphs of 4-regular graphs (6-regular components), of
//! (4,5)-bipartite graphs (7-regular) and of 5-regular graphs (8-regular).
//!
//! A component qualifies when its edge set partitions into cliques of the
//! two prescribed sizes such that every vertex lies in exactly two of them
//! (one of each size). The cliques become the vertices of the root graph,
//! each line-vertex becomes the root edge joining its two cliques, and a
//! maximum independent set of the component is read off a maximum matching
//! of the root. Requiring the full partition matters: a 6-regular graph in
//! which every vertex merely lies in two edge-disjoint 4-cliques need not
//! be such a line graph (K7 is the classic false positive, rejected here
//! because its local clique splits are ambiguous).

use std::collections::{BTreeMap, BTreeSet};

use petgraph::graph::UnGraph;

use crate::graph::{Graph, VertexId};

/// The three removable component classes, named after their root graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineClass {
    FourRegular,
    FourFiveBipartite,
    FiveRegular,
}

impl LineClass {
    /// Uniform component degree for this class.
    pub fn component_degree(self) -> usize {
        match self {
            LineClass::FourRegular => 6,
            LineClass::FourFiveBipartite => 7,
            LineClass::FiveRegular => 8,
        }
    }

    /// Sizes of the two cliques through every vertex, smaller first.
    fn clique_sizes(self) -> (usize, usize) {
        match self {
            LineClass::FourRegular => (4, 4),
            LineClass::FourFiveBipartite => (4, 5),
            LineClass::FiveRegular => (5, 5),
        }
    }
}

/// Classifies a connected component, or returns `None` when it belongs to
/// none of the three classes.
pub fn detect_line_class(g: &Graph, component: &[VertexId]) -> Option<LineClass> {
    let cls = match uniform_degree(g, component)? {
        6 => LineClass::FourRegular,
        7 => LineClass::FourFiveBipartite,
        8 => LineClass::FiveRegular,
        _ => return None,
    };
    clique_partition(g, component, cls).map(|_| cls)
}

fn uniform_degree(g: &Graph, component: &[VertexId]) -> Option<usize> {
    let mut it = component.iter();
    let d = g.degree(*it.next()?);
    it.all(|&v| g.degree(v) == d).then_some(d)
}

/// Maps each line-vertex of a detected component to its root edge.
pub type RootEdgeMap = BTreeMap<VertexId, (VertexId, VertexId)>;

/// Builds the root graph `H'` for a detected component together with the
/// map from each line-vertex to its root edge. Root vertices are indexed
/// `0..t` in the returned graph.
pub fn reconstruct_root_graph(
    g: &Graph,
    component: &[VertexId],
    cls: LineClass,
) -> Option<(Graph, RootEdgeMap)> {
    let cliques = clique_partition(g, component, cls)?;
    let index: BTreeMap<&Vec<VertexId>, VertexId> =
        cliques.iter().enumerate().map(|(i, c)| (c, i)).collect();

    let mut membership: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (clique, &i) in &index {
        for &v in *clique {
            membership.entry(v).or_default().push(i);
        }
    }

    let mut root = Graph::with_vertices(cliques.len());
    let mut edge_map = BTreeMap::new();
    for &v in component {
        let pair = &membership[&v];
        debug_assert_eq!(pair.len(), 2);
        let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        // distinct line-vertices must map to distinct root edges
        if !root.add_edge(a, b).unwrap() {
            return None;
        }
        edge_map.insert(v, (a, b));
    }
    debug_assert_eq!(root.size(), component.len());
    Some((root, edge_map))
}

/// Solves a component exactly when it is one of the three classes:
/// returns the independence number and a witness (line-vertices whose
/// root edges form a maximum matching).
pub fn solve_line_component(g: &Graph, component: &[VertexId]) -> Option<(usize, Vec<VertexId>)> {
    let cls = detect_line_class(g, component)?;
    let (root, edge_map) = reconstruct_root_graph(g, component, cls)?;
    let matching = maximum_matching(&root);
    let matched: BTreeSet<(VertexId, VertexId)> = matching.into_iter().collect();
    let chosen: Vec<VertexId> = component
        .iter()
        .copied()
        .filter(|v| matched.contains(&edge_map[v]))
        .collect();
    // Detection is allowed to false-negative but never to miscount:
    // returning None here just leaves the component to the branching
    // solver. With the witness independent, |matching| = alpha exactly.
    if chosen.len() != matched.len() || !g.is_independent_set(&chosen) {
        return None;
    }
    Some((chosen.len(), chosen))
}

/// Maximum-cardinality matching of a general graph, returned as ordered
/// pairs `(u, v)` with `u < v`.
pub fn maximum_matching(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let mut pg: UnGraph<VertexId, ()> = UnGraph::new_undirected();
    let mut node_of = BTreeMap::new();
    for v in g.vertices() {
        node_of.insert(v, pg.add_node(v));
    }
    for (u, v) in g.edge_list() {
        pg.add_edge(node_of[&u], node_of[&v], ());
    }
    let matching = petgraph::algo::matching::maximum_matching(&pg);
    let mut out: Vec<(VertexId, VertexId)> = matching
        .edges()
        .map(|(a, b)| {
            let (x, y) = (pg[a], pg[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Finds the Krausz-style clique partition for `cls`, or `None`.
///
/// Every vertex must split its closed neighborhood into exactly one
/// unordered pair of cliques of the prescribed sizes; the union of those
/// cliques must cover every edge exactly once and every vertex exactly
/// twice.
fn clique_partition(
    g: &Graph,
    component: &[VertexId],
    cls: LineClass,
) -> Option<Vec<Vec<VertexId>>> {
    let (s1, s2) = cls.clique_sizes();
    let degree = cls.component_degree();
    if component.len() < s1.max(s2) {
        return None;
    }
    let mut cliques: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    for &v in component {
        if g.degree(v) != degree {
            return None;
        }
        let (a, b) = unique_split(g, v, s1 - 1, s2 - 1)?;
        cliques.insert(with_vertex(v, &a));
        cliques.insert(with_vertex(v, &b));
    }

    // Global audit: vertex coverage and exact edge coverage.
    let mut seen_in: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut covered_edges = 0usize;
    for c in &cliques {
        for (i, &u) in c.iter().enumerate() {
            *seen_in.entry(u).or_insert(0) += 1;
            for &w in &c[i + 1..] {
                if !g.has_edge(u, w) {
                    return None;
                }
            }
        }
        covered_edges += c.len() * (c.len() - 1) / 2;
    }
    let component_edges: usize = component.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    if covered_edges != component_edges {
        return None;
    }
    if component.iter().any(|v| seen_in.get(v) != Some(&2)) {
        return None;
    }
    if cls == LineClass::FourFiveBipartite {
        // each vertex needs one clique of either size
        let mut size_of: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for c in &cliques {
            for &u in c {
                size_of.entry(u).or_default().push(c.len());
            }
        }
        for sizes in size_of.values() {
            if sizes.iter().sum::<usize>() != 9 {
                return None;
            }
        }
    }
    Some(cliques.into_iter().collect())
}

fn with_vertex(v: VertexId, rest: &[VertexId]) -> Vec<VertexId> {
    let mut c = Vec::with_capacity(rest.len() + 1);
    c.extend_from_slice(rest);
    c.push(v);
    c.sort_unstable();
    c
}

/// Splits `N(v)` into cliques of sizes `a` and `b` (unordered); `None`
/// unless the split exists and is unique.
fn unique_split(
    g: &Graph,
    v: VertexId,
    a: usize,
    b: usize,
) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
    let nbrs: Vec<VertexId> = g.neighbors(v).collect();
    if nbrs.len() != a + b {
        return None;
    }
    let mut found: Option<(Vec<VertexId>, Vec<VertexId>)> = None;
    let mut chosen = vec![false; nbrs.len()];
    let mut seen: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    subsets_of_size(&nbrs, a, 0, &mut chosen, &mut |side: Vec<VertexId>| {
        let rest: Vec<VertexId> = nbrs.iter().copied().filter(|u| !side.contains(u)).collect();
        if !is_clique(g, &side) || !is_clique(g, &rest) {
            return true;
        }
        let mut key = side.clone();
        key.sort_unstable();
        if a == b {
            // canonical representative of the unordered split
            let mut alt = rest.clone();
            alt.sort_unstable();
            if alt < key {
                key = alt;
            }
        }
        if seen.insert(key) && seen.len() > 1 {
            return false; // ambiguous
        }
        found = Some((side, rest));
        true
    });
    if seen.len() == 1 {
        found
    } else {
        None
    }
}

fn is_clique(g: &Graph, xs: &[VertexId]) -> bool {
    for (i, &u) in xs.iter().enumerate() {
        for &w in &xs[i + 1..] {
            if !g.has_edge(u, w) {
                return false;
            }
        }
    }
    true
}

/// Enumerates size-`k` subsets of `items`; the callback returns `false`
/// to stop early.
fn subsets_of_size(
    items: &[VertexId],
    k: usize,
    start: usize,
    chosen: &mut Vec<bool>,
    f: &mut impl FnMut(Vec<VertexId>) -> bool,
) -> bool {
    if k == 0 {
        let subset: Vec<VertexId> = items
            .iter()
            .zip(chosen.iter())
            .filter_map(|(&v, &c)| c.then_some(v))
            .collect();
        return f(subset);
    }
    if start + k > items.len() {
        return true;
    }
    for i in start..=items.len() - k {
        chosen[i] = true;
        let keep_going = subsets_of_size(items, k - 1, i + 1, chosen, f);
        chosen[i] = false;
        if !keep_going {
            return false;
        }
    }
    true
}
