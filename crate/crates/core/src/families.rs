//! Graph constructors: named families for tests and benchmarks plus the
//! seeded random generators behind the `gen` command.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::from_edges(a + b, &edges).unwrap()
}

/// Complete multipartite graph with the given part sizes.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// The Petersen graph: outer C5, inner 5-cycle with step 2, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// The d-dimensional hypercube Q_d.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let mut edges = Vec::new();
    for u in 0..n {
        for b in 0..d {
            let v = u ^ (1 << b);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// The dodecahedron skeleton (3-regular, 20 vertices).
pub fn dodecahedron() -> Graph {
    let edges: [(VertexId, VertexId); 30] = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
        (5, 10),
        (10, 6),
        (6, 11),
        (11, 7),
        (7, 12),
        (12, 8),
        (8, 13),
        (13, 9),
        (9, 14),
        (14, 5),
        (10, 15),
        (11, 16),
        (12, 17),
        (13, 18),
        (14, 19),
        (15, 16),
        (16, 17),
        (17, 18),
        (18, 19),
        (19, 15),
    ];
    Graph::from_edges(20, &edges).unwrap()
}

/// Line graph of `g`: one vertex per edge, adjacency by shared endpoint.
pub fn line_graph_of(g: &Graph) -> Graph {
    let edges = g.edge_list();
    let mut out = Graph::with_vertices(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                out.add_edge(i, j).unwrap();
            }
        }
    }
    out
}

/// `L(K_t)`, the triangular graph: 6-regular for t = 5, 8-regular for t = 6.
pub fn line_of_complete(t: usize) -> Graph {
    line_graph_of(&complete(t))
}

/// Erdős–Rényi G(n, p), deterministic under the seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Simple k-regular graph via the configuration model: stubs are paired
/// one edge at a time, rejecting self-loops and parallel edges, with a
/// full restart on dead ends. Returns `None` if `n*k` is odd, `k >= n`,
/// or no simple pairing was found within the retry budget.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Option<Graph> {
    if !(n * k).is_multiple_of(2) || k >= n {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..200 {
        let mut stubs: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
        stubs.shuffle(&mut rng);
        let mut g = Graph::with_vertices(n);
        while !stubs.is_empty() {
            let mut placed = false;
            for _ in 0..30 {
                let i = rng.random_range(0..stubs.len());
                let mut j = rng.random_range(0..stubs.len());
                if i == j {
                    j = (j + 1) % stubs.len();
                }
                let (u, v) = (stubs[i], stubs[j]);
                if u != v && !g.has_edge(u, v) {
                    take_pair(&mut stubs, i, j);
                    g.add_edge(u, v).unwrap();
                    placed = true;
                    break;
                }
            }
            if !placed {
                // exhaustive scan before declaring a dead end
                let found = (0..stubs.len())
                    .flat_map(|i| ((i + 1)..stubs.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| stubs[i] != stubs[j] && !g.has_edge(stubs[i], stubs[j]));
                match found {
                    Some((i, j)) => {
                        let (u, v) = (stubs[i], stubs[j]);
                        take_pair(&mut stubs, i, j);
                        g.add_edge(u, v).unwrap();
                    }
                    None => continue 'attempt,
                }
            }
        }
        return Some(g);
    }
    None
}

fn take_pair(stubs: &mut Vec<VertexId>, i: usize, j: usize) {
    let (hi, lo) = (i.max(j), i.min(j));
    stubs.swap_remove(hi);
    stubs.swap_remove(lo);
}

/// Random graph drawn from G(n, p) with p itself drawn from `p_choices`.
pub fn gnp_mixed(n_range: std::ops::RangeInclusive<usize>, p_choices: &[f64], seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(n_range);
    let p = p_choices[rng.random_range(0..p_choices.len())];
    let inner = rng.random::<u64>();
    gnp(n, p, inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_of_k5_is_6_regular_triangular_graph() {
        let g = line_of_complete(5);
        assert_eq!(g.order(), 10);
        assert!(g.vertices().all(|v| g.degree(v) == 6));
    }

    #[test]
    fn line_of_k45_is_7_regular() {
        let g = line_graph_of(&complete_bipartite(4, 5));
        assert_eq!(g.order(), 20);
        assert!(g.vertices().all(|v| g.degree(v) == 7));
    }

    #[test]
    fn random_regular_is_regular_and_seeded() {
        let g = random_regular(14, 6, 7).expect("feasible");
        assert!(g.vertices().all(|v| g.degree(v) == 6));
        assert!(g.audit().is_ok());
        let h = random_regular(14, 6, 7).unwrap();
        assert_eq!(g.edge_list(), h.edge_list());
        assert!(random_regular(7, 3, 1).is_none(), "odd stub count");
    }

    #[test]
    fn hypercubes_are_regular() {
        for d in 2..=4 {
            let g = hypercube(d);
            assert!(g.vertices().all(|v| g.degree(v) == d as usize));
        }
    }

    #[test]
    fn dodecahedron_is_cubic() {
        let g = dodecahedron();
        assert_eq!(g.order(), 20);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert!(g.audit().is_ok());
    }
}
