use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use planar_harness::gen::{generate_trace, Model};
use planar_harness::sweep::sweep_amortized;
use planar_harness::trace::{parse_trace, run_trace, RunOpts};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "planar-harness", about = "Dynamic planarity trace harness")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a trace file and print one output line per operation.
    Run {
        #[arg(long)]
        trace: PathBuf,
        /// Recompute static planarity after every op and count mismatches.
        #[arg(long)]
        check_oracle: bool,
        /// Check the embedding and index invariants after every op.
        #[arg(long)]
        validate_every: bool,
        /// Write run statistics as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Tree-cotree backend.
        #[arg(long, default_value = "reference")]
        backend: String,
    },
    /// Generate a trace to stdout.
    Gen {
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ops: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Amortized-flip sweep over planar-growth workloads.
    Sweep {
        /// Comma-separated graph sizes.
        #[arg(long)]
        ns: String,
        #[arg(long)]
        ops: usize,
        /// Comma-separated seeds.
        #[arg(long)]
        seeds: String,
        #[arg(long)]
        stats: Option<PathBuf>,
    },
}

fn check_backend(name: &str) -> Result<()> {
    match name {
        "reference" => Ok(()),
        "balanced" => bail!("the balanced backend is not built; use --backend reference"),
        other => bail!("unknown backend '{}'", other),
    }
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Run { trace, check_oracle, validate_every, stats, backend } => {
            check_backend(&backend)?;
            let text = std::fs::read_to_string(&trace)
                .with_context(|| format!("reading {}", trace.display()))?;
            let t = parse_trace(&text)?;
            let out = run_trace(&t, RunOpts { check_oracle, validate_every })?;
            for line in &out.lines {
                println!("{}", line);
            }
            if let Some(path) = stats {
                std::fs::write(&path, serde_json::to_string_pretty(&out.stats)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            eprintln!(
                "ops={} inserts={} rejects={} flips={} mismatches={} violations={}",
                out.stats.ops,
                out.stats.inserts,
                out.stats.rejects,
                out.stats.flips_total,
                out.stats.mismatches,
                out.violations
            );
            if out.stats.mismatches > 0 || out.violations > 0 {
                std::process::exit(1);
            }
            Ok(())
        }
        Cmd::Gen { model, n, ops, seed } => {
            let model: Model = model.parse().map_err(anyhow::Error::msg)?;
            print!("{}", generate_trace(model, n, ops, seed));
            Ok(())
        }
        Cmd::Sweep { ns, ops, seeds, stats } => {
            let ns: Vec<usize> = ns
                .split(',')
                .map(|s| s.trim().parse().context("bad size"))
                .collect::<Result<_>>()?;
            let seeds: Vec<u64> = seeds
                .split(',')
                .map(|s| s.trim().parse().context("bad seed"))
                .collect::<Result<_>>()?;
            let report = sweep_amortized(&ns, ops, &seeds)?;
            println!("{:>8} {:>22} {:>14}", "n", "flips/insert (mean)", "per log2(n)");
            for row in &report.rows {
                println!(
                    "{:>8} {:>22.4} {:>14.4}",
                    row.n, row.mean_flips_per_insert, row.normalized
                );
            }
            println!("normalized max/min ratio: {:.4}", report.ratio);
            if let Some(path) = stats {
                std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
            }
            Ok(())
        }
    }
}
