//! `mis`: exact maximum independent set solving, verification, random
//! instance generation and branching-factor analysis.
//!
//! Exit codes: 0 on success or PASS, 1 on FAIL or timeout, 2 on usage,
//! parse or weight-constraint errors.

mod commands;
mod formats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "mis", version, about = "Exact maximum independent set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and report the independence number.
    Solve {
        /// DIMACS edge file or adjacency-list file.
        path: PathBuf,
        /// Print the solution vertices (1-based).
        #[arg(long)]
        witness: bool,
        /// Print search statistics.
        #[arg(long)]
        stats: bool,
        /// Emit the run report as JSON.
        #[arg(long)]
        json: bool,
        /// Best-effort time limit in seconds, checked between nodes.
        #[arg(long = "timeout-s")]
        timeout_s: Option<f64>,
    },
    /// Check the solver against the exhaustive oracle on one instance.
    Verify {
        path: PathBuf,
        /// Only validate the witness (independence and size), skipping
        /// the oracle; required for instances above the oracle limit.
        #[arg(long)]
        certificate_only: bool,
        /// Emit the verdict as JSON.
        #[arg(long)]
        json: bool,
        /// Test plumbing: offset the reported size to exercise FAIL.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Evaluate the branching-factor catalog for a degree level.
    Analyze {
        /// Degree level: 6, 7 or 8.
        theta: usize,
        /// Interior weights w3..w_{theta-1}, whitespace-separated; the
        /// certified reference vector when omitted.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Measure shift (degree level 6 only); defaults to the
        /// reference shift with default weights and 0 otherwise.
        #[arg(long)]
        sigma: Option<f64>,
        /// Locally optimize the weights before reporting.
        #[arg(long)]
        optimize: bool,
        /// Acceptance threshold for the max factor; defaults to the
        /// certified bound plus a rounding slack of 1e-4.
        #[arg(long)]
        target: Option<f64>,
        /// Emit the full report as JSON.
        #[arg(long)]
        json: bool,
        /// Suppress the per-recurrence listing.
        #[arg(long)]
        summary: bool,
    },
    /// Solve a batch of instances and tabulate the results.
    Bench {
        paths: Vec<PathBuf>,
        /// Worker threads for independent instances.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long = "timeout-s")]
        timeout_s: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a deterministic instance in DIMACS form.
    Gen {
        /// One of: gnp, cycle, line-of-complete, regular-K.
        kind: String,
        /// Vertex count (root size for line-of-complete).
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for gnp.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            path,
            witness,
            stats,
            json,
            timeout_s,
        } => commands::solve(&path, witness, stats, json, timeout_s),
        Command::Verify {
            path,
            certificate_only,
            json,
            inject_fault,
        } => commands::verify(&path, certificate_only, json, inject_fault),
        Command::Analyze {
            theta,
            weights,
            sigma,
            optimize,
            target,
            json,
            summary,
        } => commands::analyze(
            theta,
            weights.as_deref(),
            sigma,
            optimize,
            target,
            json,
            summary,
        ),
        Command::Bench {
            paths,
            jobs,
            timeout_s,
            json,
        } => commands::bench(&paths, jobs, timeout_s, json),
        Command::Gen {
            kind,
            n,
            seed,
            p,
            out,
        } => commands::gen(&kind, n, seed, p, out.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
