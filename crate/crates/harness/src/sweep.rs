//! Amortized-flip sweeps: mean flips per attempted insertion across graph
//! sizes, normalized by `log2 n`.

use crate::gen::{generate_trace, Model};
use crate::trace::{run_trace, RunOpts};
use anyhow::Result;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub mean_flips_per_insert: f64,
    pub normalized: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// max over n of the normalized mean, divided by the min: the
    /// amortization health metric.
    pub ratio: f64,
}

pub fn sweep_amortized(ns: &[usize], ops_per_n: usize, seeds: &[u64]) -> Result<SweepReport> {
    let mut rows = Vec::new();
    for &n in ns {
        let mut acc = 0.0;
        for &seed in seeds {
            let trace = generate_trace(Model::PlanarGrowth, n, ops_per_n, seed);
            let out = run_trace(&trace, RunOpts::default())?;
            acc += out.stats.flips_per_insert;
        }
        let mean = acc / seeds.len() as f64;
        rows.push(SweepRow { n, mean_flips_per_insert: mean, normalized: mean / (n as f64).log2() });
    }
    let max = rows.iter().map(|r| r.normalized).fold(f64::MIN, f64::max);
    let min = rows.iter().map(|r| r.normalized).fold(f64::MAX, f64::min);
    let ratio = if min > 0.0 { max / min } else { f64::INFINITY };
    Ok(SweepReport { rows, ratio })
}
