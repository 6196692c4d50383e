//! Subcommand implementations.

use std::fs;
use std::path::Path;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use mis_core::analysis::{self, AnalysisReport, WeightVector, FACTOR_SLACK, REFERENCE_SIGMA6};
use mis_core::solver::{self, Solution, SolveError, SolveOptions, ORACLE_LIMIT};
use mis_core::{families, Graph};

use crate::formats::{external_ids, parse_instance, to_dimacs};

fn load(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = parse_instance(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(g)
}

fn instance_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn options(timeout_s: Option<f64>) -> SolveOptions {
    SolveOptions {
        deadline: timeout_s.map(|s| Instant::now() + Duration::from_secs_f64(s)),
        ..Default::default()
    }
}

fn run_report(name: &str, sol: &Solution, elapsed: Duration) -> serde_json::Value {
    json!({
        "instance": name,
        "alpha": sol.size,
        "witness": external_ids(&sol.witness),
        "branch_nodes": sol.stats.branch_nodes,
        "time_ms": elapsed.as_secs_f64() * 1e3,
        "reductions": {
            "isolated": sol.stats.reductions.isolated,
            "unconfined": sol.stats.reductions.unconfined,
            "folded_independent": sol.stats.reductions.folded_independent,
            "folded_clique": sol.stats.reductions.folded_clique,
            "line_components": sol.stats.reductions.line_components,
        },
    })
}

pub fn solve(
    path: &Path,
    witness: bool,
    stats: bool,
    json: bool,
    timeout_s: Option<f64>,
) -> Result<u8> {
    let g = load(path)?;
    let started = Instant::now();
    let sol = match solver::solve_with(&g, &options(timeout_s)) {
        Ok(sol) => sol,
        Err(SolveError::Timeout) => {
            eprintln!("timeout after {:.1}s", timeout_s.unwrap_or_default());
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    let elapsed = started.elapsed();
    let name = instance_name(path);
    if json {
        println!("{}", run_report(&name, &sol, elapsed));
        return Ok(0);
    }
    println!("{name}: alpha = {}", sol.size);
    if witness {
        let ids: Vec<String> = external_ids(&sol.witness)
            .iter()
            .map(usize::to_string)
            .collect();
        println!("witness: {}", ids.join(" "));
    }
    if stats {
        let r = sol.stats.reductions;
        println!(
            "nodes {} depth {} time {:.2}ms reductions: isolated {} unconfined {} fold-ind {} fold-cl {} line {}",
            sol.stats.branch_nodes,
            sol.stats.max_depth,
            elapsed.as_secs_f64() * 1e3,
            r.isolated,
            r.unconfined,
            r.folded_independent,
            r.folded_clique,
            r.line_components,
        );
    }
    Ok(0)
}

pub fn verify(path: &Path, certificate_only: bool, json: bool, inject_fault: bool) -> Result<u8> {
    let g = load(path)?;
    if !certificate_only && g.order() > ORACLE_LIMIT {
        bail!(
            "instance has {} vertices, above the oracle limit {}; pass --certificate-only",
            g.order(),
            ORACLE_LIMIT
        );
    }
    let sol = solver::solve(&g);
    let reported = sol.size + usize::from(inject_fault);
    let witness_valid = sol.witness.len() == sol.size && g.is_independent_set(&sol.witness);
    let oracle = if certificate_only {
        None
    } else {
        Some(solver::brute_force_mis(&g).map_err(|e| anyhow!(e))?.0)
    };
    let pass = witness_valid && oracle.is_none_or(|a| a == reported);
    let verdict = if pass { "PASS" } else { "FAIL" };
    if json {
        println!(
            "{}",
            json!({
                "instance": instance_name(path),
                "alpha": reported,
                "oracle": oracle,
                "witness_valid": witness_valid,
                "result": verdict,
            })
        );
    } else {
        match oracle {
            Some(a) => {
                println!("{verdict}: alpha={reported} oracle={a} witness_valid={witness_valid}")
            }
            None => println!(
                "{verdict}: alpha={reported} witness_valid={witness_valid} (certificate only)"
            ),
        }
    }
    Ok(u8::from(!pass))
}

fn read_weights(path: &Path, theta: usize) -> Result<WeightVector> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading weights {}", path.display()))?;
    let values: Vec<f64> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| anyhow!("bad weight {tok:?}"))
        })
        .collect::<Result<_>>()?;
    WeightVector::new(theta, &values).map_err(|e| anyhow!(e))
}

fn print_report(report: &AnalysisReport, target: f64, summary: bool) {
    if !summary {
        for row in &report.rows {
            let decreases: Vec<String> = row.decreases.iter().map(|d| format!("{d:.5}")).collect();
            println!(
                "{:<28} ({})  {:.7}",
                row.label,
                decreases.join(", "),
                row.factor
            );
        }
    }
    println!(
        "degree level {}: {} recurrences, max factor {:.7} (target {}) worst: {}",
        report.theta,
        report.rows.len(),
        report.max_factor,
        target,
        report.worst_label
    );
    for check in &report.cross_level {
        println!("{check}");
    }
    for v in &report.constraint_violations {
        println!("constraint violated: {v}");
    }
}

pub fn analyze(
    theta: usize,
    weights: Option<&Path>,
    sigma: Option<f64>,
    optimize: bool,
    target: Option<f64>,
    json: bool,
    summary: bool,
) -> Result<u8> {
    if !(6..=8).contains(&theta) {
        bail!("degree level must be 6, 7 or 8");
    }
    let (mut w, default_sigma) = match weights {
        Some(path) => (read_weights(path, theta)?, 0.0),
        None => (
            WeightVector::reference(theta),
            if theta == 6 { REFERENCE_SIGMA6 } else { 0.0 },
        ),
    };
    let mut sigma = sigma.unwrap_or(default_sigma);
    let target = target.unwrap_or(analysis::target_factor(theta) + FACTOR_SLACK);

    let mut report = analysis::analyze(theta, &w, sigma).map_err(|e| anyhow!(e))?;
    if !report.constraint_violations.is_empty() {
        for v in &report.constraint_violations {
            eprintln!("constraint violated: {v}");
        }
        if json {
            println!(
                "{}",
                json!({"theta": theta, "constraint_violations": report.constraint_violations})
            );
        }
        return Ok(2);
    }
    if optimize {
        let (ow, os, of) = analysis::optimize_weights(theta, &w, sigma).map_err(|e| anyhow!(e))?;
        println!(
            "optimized weights: [{}] sigma {:.5} factor {:.7}",
            ow.interior()
                .iter()
                .map(|x| format!("{x:.5}"))
                .collect::<Vec<_>>()
                .join(", "),
            os,
            of
        );
        (w, sigma) = (ow, os);
        report = analysis::analyze(theta, &w, sigma).map_err(|e| anyhow!(e))?;
    }
    if json {
        let rows: Vec<_> = report
            .rows
            .iter()
            .map(|r| json!({"label": r.label, "decreases": r.decreases, "factor": r.factor}))
            .collect();
        let cross: Vec<_> = report
            .cross_level
            .iter()
            .map(
                |c| json!({"degree": c.degree, "factor": c.factor, "target": c.target, "ok": c.ok}),
            )
            .collect();
        println!(
            "{}",
            json!({
                "theta": theta,
                "sigma": report.sigma,
                "weights": w.interior(),
                "recurrences": rows,
                "max_factor": report.max_factor,
                "worst": report.worst_label,
                "cross_level": cross,
                "target": target,
            })
        );
    } else {
        print_report(&report, target, summary);
    }
    let ok = report.max_factor <= target && report.cross_level_ok();
    Ok(u8::from(!ok))
}

/// Instance name, order, size and the solve outcome (None on timeout).
type BenchRow = (String, usize, usize, Option<(Solution, Duration)>);

pub fn bench(
    paths: &[std::path::PathBuf],
    jobs: usize,
    timeout_s: Option<f64>,
    json: bool,
) -> Result<u8> {
    if paths.is_empty() {
        bail!("bench needs at least one instance path");
    }
    let graphs: Vec<(String, Graph)> = paths
        .iter()
        .map(|p| load(p).map(|g| (instance_name(p), g)))
        .collect::<Result<_>>()?;

    let results: Vec<BenchRow> = if jobs <= 1 {
        graphs
            .into_iter()
            .map(|(name, g)| bench_one(name, g, timeout_s))
            .collect()
    } else {
        let queue = Mutex::new(graphs.into_iter().enumerate().collect::<Vec<_>>());
        let mut slots: Vec<Option<_>> = (0..paths.len()).map(|_| None).collect();
        let out = Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let item = queue.lock().unwrap().pop();
                    let Some((idx, (name, g))) = item else { break };
                    let res = bench_one(name, g, timeout_s);
                    out.lock().unwrap()[idx] = Some(res);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.expect("every slot filled"))
            .collect()
    };

    if json {
        let rows: Vec<_> = results
            .iter()
            .map(|(name, n, m, outcome)| match outcome {
                Some((sol, t)) => {
                    let mut v = run_report(name, sol, *t);
                    v["n"] = json!(n);
                    v["m"] = json!(m);
                    v
                }
                None => json!({"instance": name, "n": n, "m": m, "timeout": true}),
            })
            .collect();
        println!("{}", json!(rows));
        return Ok(0);
    }
    println!(
        "{:<24} {:>5} {:>6} {:>6} {:>10} {:>10}",
        "instance", "n", "m", "alpha", "nodes", "ms"
    );
    for (name, n, m, outcome) in &results {
        match outcome {
            Some((sol, t)) => println!(
                "{:<24} {:>5} {:>6} {:>6} {:>10} {:>10.2}",
                name,
                n,
                m,
                sol.size,
                sol.stats.branch_nodes,
                t.as_secs_f64() * 1e3
            ),
            None => println!("{name:<24} {n:>5} {m:>6} {:>6}", "timeout"),
        }
    }
    Ok(0)
}

fn bench_one(name: String, g: Graph, timeout_s: Option<f64>) -> BenchRow {
    let (n, m) = (g.order(), g.size());
    let started = Instant::now();
    match solver::solve_with(&g, &options(timeout_s)) {
        Ok(sol) => (name, n, m, Some((sol, started.elapsed()))),
        Err(_) => (name, n, m, None),
    }
}

pub fn gen(kind: &str, n: usize, seed: u64, p: f64, out: Option<&Path>) -> Result<u8> {
    let g = match kind {
        "gnp" => {
            if !(0.0..=1.0).contains(&p) {
                bail!("edge probability must lie in [0, 1]");
            }
            families::gnp(n, p, seed)
        }
        "cycle" => {
            if n < 3 {
                bail!("cycle needs at least 3 vertices");
            }
            families::cycle(n)
        }
        "line-of-complete" => {
            if n < 2 {
                bail!("line-of-complete needs a root with at least 2 vertices");
            }
            families::line_of_complete(n)
        }
        _ => {
            let Some(k) = kind
                .strip_prefix("regular-")
                .and_then(|s| s.parse::<usize>().ok())
            else {
                bail!(
                    "unknown kind {kind:?}; expected gnp, cycle, line-of-complete or regular-<k>"
                );
            };
            families::random_regular(n, k, seed).ok_or_else(|| {
                anyhow!("no simple {k}-regular graph on {n} vertices (n*k must be even, k < n)")
            })?
        }
    };
    let text = to_dimacs(&g);
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}
