//! The branch-and-reduce search: general graphs branch on maximum-degree
//! vertices while the degree is at least 9, then hand off through the
//! degree-8, 7 and 6 levels (reduce, branch on over-degree vertices, then
//! on optimal short edges, then on optimal vertices) down to a generic
//! low-degree fallback. Every node reduces first, splits into connected
//! components, and lifts the winning child's witness back through its
//! trace.

use std::collections::BTreeSet;
use std::time::Instant;

use thiserror::Error;

use crate::analysis::WeightVector;
use crate::branching::{
    edge_branch_plan, edge_branch_subproblems, find_short_edges, select_optimal_short_edge,
    select_optimal_vertex, vertex_branch_plan, BranchPlan,
};
use crate::graph::{Graph, VertexId};
use crate::reductions::{reduce_counting, ReductionCounts};
use crate::trace::{SolveTrace, TraceEvent};

/// Hard cap for the exhaustive oracle.
pub const ORACLE_LIMIT: usize = 32;

const MEASURE_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("solve interrupted: deadline exceeded")]
    Timeout,
    #[error("oracle limited to {limit} vertices, instance has {actual}")]
    TooLarge { limit: usize, actual: usize },
}

/// Search statistics for one solve call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search-tree nodes expanded (at least 1 for a nonempty instance).
    pub branch_nodes: u64,
    pub max_depth: usize,
    pub reductions: ReductionCounts,
    /// Branchings on an optimal short edge.
    pub edge_branches: u64,
    /// Successful optimal-vertex selections at the degree-capped levels.
    pub optimal_selections: u64,
    /// Reduce steps that increased the measure or branch children that
    /// failed to decrease it, counted only when monitoring is enabled.
    pub measure_violations: u64,
    /// Times the optimal-vertex selector came up empty on a reduced,
    /// short-edge-free, maximum-degree-theta graph. Always zero unless
    /// something upstream is broken; the solver falls back to the
    /// smallest-id maximum-degree vertex to stay correct.
    pub selector_fallbacks: u64,
}

/// An exact solution: size, witness over original vertex ids, statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub size: usize,
    pub witness: Vec<VertexId>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Best-effort cancellation checked at every search node.
    pub deadline: Option<Instant>,
    /// Track the measure across reduce steps and branch children with
    /// the weight vector of the instance's degree level.
    pub monitor_measure: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Level {
    General,
    Theta(usize),
    LowDegree,
}

/// Solves MIS exactly on an arbitrary graph.
pub fn solve(g: &Graph) -> Solution {
    solve_with(g, &SolveOptions::default()).expect("no deadline configured")
}

/// As [`solve`] with explicit options; fails only on deadline expiry.
pub fn solve_with(g: &Graph, opts: &SolveOptions) -> Result<Solution, SolveError> {
    run(g, Level::General, opts)
}

/// The bounded-degree algorithm entry for theta in {6, 7, 8}. Vertices of
/// degree above theta (present initially or created by contraction) are
/// handled by the over-degree branching step.
pub fn mis_theta(g: &Graph, theta: usize) -> Solution {
    assert!((6..=8).contains(&theta), "theta must be 6, 7 or 8");
    run(g, Level::Theta(theta), &SolveOptions::default()).expect("no deadline configured")
}

/// Generic solver for graphs of maximum degree at most 5: alternates
/// reduction with branching on a maximum-degree vertex.
pub fn fallback_low_degree(g: &Graph) -> Solution {
    assert!(g.max_degree() <= 5, "fallback expects maximum degree <= 5");
    run(g, Level::LowDegree, &SolveOptions::default()).expect("no deadline configured")
}

fn run(g: &Graph, level: Level, opts: &SolveOptions) -> Result<Solution, SolveError> {
    let weights = opts.monitor_measure.then(|| {
        let theta = g.max_degree().clamp(6, 8);
        WeightVector::reference(theta)
    });
    let mut ctx = Ctx {
        stats: SearchStats::default(),
        weights,
        deadline: opts.deadline,
    };
    let (size, witness) = solve_rec(g.clone(), level, 0, &mut ctx)?;
    debug_assert!(g.is_independent_set(&witness));
    debug_assert_eq!(witness.len(), size);
    Ok(Solution {
        size,
        witness,
        stats: ctx.stats,
    })
}

struct Ctx {
    stats: SearchStats,
    weights: Option<WeightVector>,
    deadline: Option<Instant>,
}

impl Ctx {
    fn measure(&self, g: &Graph) -> Option<f64> {
        self.weights.as_ref().map(|w| w.measure(g))
    }
}

fn max_degree_vertex(g: &Graph) -> VertexId {
    let d = g.max_degree();
    g.vertices().find(|&v| g.degree(v) == d).expect("nonempty")
}

enum Action {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
}

fn solve_rec(
    g: Graph,
    mut level: Level,
    depth: usize,
    ctx: &mut Ctx,
) -> Result<(usize, Vec<VertexId>), SolveError> {
    if let Some(deadline) = ctx.deadline {
        if Instant::now() >= deadline {
            return Err(SolveError::Timeout);
        }
    }
    if g.is_empty() {
        return Ok((0, Vec::new()));
    }
    ctx.stats.branch_nodes += 1;
    ctx.stats.max_depth = ctx.stats.max_depth.max(depth);

    let mu_in = ctx.measure(&g);
    let mut trace = SolveTrace::new();
    let (h, banked) = reduce_counting(&g, &mut trace, &mut ctx.stats.reductions);
    if let (Some(mu0), Some(mu1)) = (mu_in, ctx.measure(&h)) {
        if mu1 > mu0 + MEASURE_EPS {
            ctx.stats.measure_violations += 1;
        }
    }
    if h.is_empty() {
        return Ok((banked, reconstruct_certificate(&trace, Vec::new())));
    }

    let comps = h.components();
    if comps.len() > 1 {
        let mut size = 0;
        let mut witness = Vec::new();
        for comp in comps {
            let (s, w) = solve_rec(h.induced(&comp), level, depth, ctx)?;
            size += s;
            witness.extend(w);
        }
        return Ok((banked + size, reconstruct_certificate(&trace, witness)));
    }

    let d = h.max_degree();
    let action = loop {
        match level {
            Level::General => {
                if d >= 9 {
                    break Action::Vertex(max_degree_vertex(&h));
                }
                level = Level::Theta(8);
            }
            Level::Theta(theta) => {
                if d > theta {
                    break Action::Vertex(max_degree_vertex(&h));
                }
                if d == theta {
                    let short = find_short_edges(&h, theta);
                    if short.is_empty() {
                        break Action::Vertex(match select_optimal_vertex(&h, theta) {
                            Some(v) => {
                                ctx.stats.optimal_selections += 1;
                                v
                            }
                            None => {
                                ctx.stats.selector_fallbacks += 1;
                                max_degree_vertex(&h)
                            }
                        });
                    }
                    let (v, w) = select_optimal_short_edge(&short, &h).expect("nonempty");
                    ctx.stats.edge_branches += 1;
                    break Action::Edge(v, w);
                }
                level = if theta > 6 {
                    Level::Theta(theta - 1)
                } else {
                    Level::LowDegree
                };
            }
            Level::LowDegree => break Action::Vertex(max_degree_vertex(&h)),
        }
    };

    let mu_h = ctx.measure(&h);
    let (size, witness) = match action {
        Action::Vertex(v) => {
            let BranchPlan::Vertex { s_v, .. } = vertex_branch_plan(&h, v) else {
                unreachable!()
            };
            let closed: Vec<VertexId> = h.closed_neighborhood(&s_v).into_iter().collect();
            let excl = h.delete_vertices(&[v]).expect("live branch vertex");
            let incl = h.delete_vertices(&closed).expect("live extending set");
            // guaranteed decreases of the two branches: removing v costs
            // its weight plus one step per neighbor; committing the
            // extending set removes at least all of N[v]
            if let Some(w) = ctx.weights.as_ref() {
                let d_out: f64 = w.weight(h.degree(v))
                    + h.neighbors(v).map(|u| w.delta(h.degree(u))).sum::<f64>();
                let d_in: f64 = w.weight(h.degree(v))
                    + h.neighbors(v).map(|u| w.weight(h.degree(u))).sum::<f64>();
                check_child_measure(ctx, mu_h, &excl, d_out);
                check_child_measure(ctx, mu_h, &incl, d_in);
            }
            let (s_ex, w_ex) = solve_rec(excl, level, depth + 1, ctx)?;
            let (s_in, w_in) = solve_rec(incl, level, depth + 1, ctx)?;
            if s_ex >= s_v.len() + s_in {
                trace.push(TraceEvent::VertexBranchExclude { vertex: v });
                (s_ex, w_ex)
            } else {
                let gained = s_v.len();
                trace.push(TraceEvent::VertexBranchInclude { set: s_v });
                (gained + s_in, w_in)
            }
        }
        Action::Edge(v, w) => {
            let BranchPlan::Edge {
                common,
                left,
                right,
                ..
            } = edge_branch_plan(&h, v, w)
            else {
                unreachable!()
            };
            let (del, dag) = edge_branch_subproblems(&h, v, w).expect("short edge exists");
            // both branches lose at least the two endpoint weights; the
            // joined graph additionally loses the common neighbors but
            // may regain weight through the new cross edges
            if let Some(wv) = ctx.weights.as_ref() {
                let endpoints = wv.weight(h.degree(v)) + wv.weight(h.degree(w));
                check_child_measure(ctx, mu_h, &del, endpoints);
                check_child_measure(ctx, mu_h, &dag, f64::MIN_POSITIVE);
            }
            let (s_del, w_del) = solve_rec(del, level, depth + 1, ctx)?;
            let (s_dag, w_dag) = solve_rec(dag, level, depth + 1, ctx)?;
            if s_del > s_dag {
                trace.push(TraceEvent::EdgeBranchLeft { v, w });
                (s_del, w_del)
            } else {
                trace.push(TraceEvent::EdgeBranchRight {
                    v,
                    w,
                    common,
                    left,
                    right,
                });
                (1 + s_dag, w_dag)
            }
        }
    };
    Ok((banked + size, reconstruct_certificate(&trace, witness)))
}

/// Flags a violation unless the child's measure sits at least
/// `min_decrease` below the parent's.
fn check_child_measure(ctx: &mut Ctx, mu_parent: Option<f64>, child: &Graph, min_decrease: f64) {
    if let (Some(mu0), Some(w)) = (mu_parent, ctx.weights.as_ref()) {
        if w.measure(child) > mu0 - min_decrease + MEASURE_EPS {
            ctx.stats.measure_violations += 1;
        }
    }
}

/// Replays a trace backwards, lifting a solution of the final graph to a
/// solution of the graph the trace started from.
pub fn reconstruct_certificate(trace: &SolveTrace, leaf: Vec<VertexId>) -> Vec<VertexId> {
    let mut sol: BTreeSet<VertexId> = leaf.into_iter().collect();
    for ev in trace.events().iter().rev() {
        match ev {
            TraceEvent::RemovedUnconfined { .. } | TraceEvent::VertexBranchExclude { .. } => {}
            TraceEvent::EdgeBranchLeft { .. } => {}
            TraceEvent::RemovedIsolated { vertex } => {
                sol.insert(*vertex);
            }
            TraceEvent::FoldedIndependent {
                set,
                neighborhood,
                contracted,
            } => {
                if sol.remove(contracted) {
                    sol.extend(neighborhood.iter().copied());
                } else {
                    sol.extend(set.iter().copied());
                }
            }
            TraceEvent::FoldedClique { set, .. } => {
                sol.extend(set.iter().copied());
            }
            TraceEvent::LineComponent { chosen, .. } => {
                sol.extend(chosen.iter().copied());
            }
            TraceEvent::EdgeBranchRight { v, w, left, .. } => {
                if left.iter().any(|u| sol.contains(u)) {
                    sol.insert(*w);
                } else {
                    sol.insert(*v);
                }
            }
            TraceEvent::VertexBranchInclude { set } => {
                sol.extend(set.iter().copied());
            }
        }
    }
    sol.into_iter().collect()
}

/// Exhaustive oracle: plain maximum-degree branching with no reductions,
/// independent of the solver's machinery. Correctness over speed.
pub fn brute_force_mis(g: &Graph) -> Result<(usize, Vec<VertexId>), SolveError> {
    if g.order() > ORACLE_LIMIT {
        return Err(SolveError::TooLarge {
            limit: ORACLE_LIMIT,
            actual: g.order(),
        });
    }
    Ok(brute_force_rec(g.clone()))
}

fn brute_force_rec(g: Graph) -> (usize, Vec<VertexId>) {
    let d = g.max_degree();
    if d <= 1 {
        // isolated vertices plus one endpoint per pendant edge
        let mut taken: Vec<VertexId> = Vec::new();
        let mut used: BTreeSet<VertexId> = BTreeSet::new();
        for v in g.vertices() {
            if used.contains(&v) {
                continue;
            }
            taken.push(v);
            used.insert(v);
            used.extend(g.neighbors(v));
        }
        return (taken.len(), taken);
    }
    let v = g
        .vertices()
        .find(|&u| g.degree(u) == d)
        .expect("graph has max degree >= 2");
    let closed: Vec<VertexId> = g.closed_neighborhood(&[v]).into_iter().collect();
    let (s_ex, w_ex) = brute_force_rec(g.delete_vertices(&[v]).unwrap());
    let (s_in, mut w_in) = brute_force_rec(g.delete_vertices(&closed).unwrap());
    if s_ex > s_in {
        (s_ex, w_ex)
    } else {
        w_in.push(v);
        w_in.sort_unstable();
        (s_in + 1, w_in)
    }
}
