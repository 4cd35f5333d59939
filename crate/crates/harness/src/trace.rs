//! Line-oriented trace format and the trace runner.
//!
//! A trace starts with a header `n <count>` and one operation per line:
//! `I u v` (insert), `D u v` (delete), `Q u v` (planarity-compatibility
//! query), `P` (global planar bit), `C v` (component bit), `N u v`
//! (embedding neighbors of an existing embedded edge). `#` starts a comment.

use anyhow::{anyhow, bail, Context, Result};
use planar::general::GeneralDynamicGraph;
use planar::ids::VertexId;
use serde::Serialize;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TraceOp {
    Insert(u32, u32),
    Delete(u32, u32),
    Query(u32, u32),
    GlobalPlanar,
    CompPlanar(u32),
    Neighbors(u32, u32),
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub n: usize,
    pub ops: Vec<TraceOp>,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for op in &self.ops {
            match op {
                TraceOp::Insert(u, v) => writeln!(f, "I {} {}", u, v)?,
                TraceOp::Delete(u, v) => writeln!(f, "D {} {}", u, v)?,
                TraceOp::Query(u, v) => writeln!(f, "Q {} {}", u, v)?,
                TraceOp::GlobalPlanar => writeln!(f, "P")?,
                TraceOp::CompPlanar(v) => writeln!(f, "C {}", v)?,
                TraceOp::Neighbors(u, v) => writeln!(f, "N {} {}", u, v)?,
            }
        }
        Ok(())
    }
}

pub fn parse_trace(text: &str) -> Result<Trace> {
    let mut n: Option<usize> = None;
    let mut ops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let head = it.next().unwrap();
        let mut arg = |what: &str| -> Result<u32> {
            it.next()
                .ok_or_else(|| anyhow!("line {}: missing {}", lineno, what))?
                .parse()
                .with_context(|| format!("line {}: bad {}", lineno, what))
        };
        match head {
            "n" => {
                if n.is_some() {
                    bail!("line {}: duplicate header", lineno);
                }
                n = Some(arg("vertex count")? as usize);
            }
            "I" | "D" | "Q" | "N" => {
                let u = arg("vertex")?;
                let v = arg("vertex")?;
                let nn = n.ok_or_else(|| anyhow!("line {}: op before header", lineno))?;
                if u as usize >= nn || v as usize >= nn {
                    bail!("line {}: vertex out of range", lineno);
                }
                ops.push(match head {
                    "I" => TraceOp::Insert(u, v),
                    "D" => TraceOp::Delete(u, v),
                    "Q" => TraceOp::Query(u, v),
                    _ => TraceOp::Neighbors(u, v),
                });
            }
            "P" => {
                n.ok_or_else(|| anyhow!("line {}: op before header", lineno))?;
                ops.push(TraceOp::GlobalPlanar);
            }
            "C" => {
                let v = arg("vertex")?;
                let nn = n.ok_or_else(|| anyhow!("line {}: op before header", lineno))?;
                if v as usize >= nn {
                    bail!("line {}: vertex out of range", lineno);
                }
                ops.push(TraceOp::CompPlanar(v));
            }
            other => bail!("line {}: unknown op '{}'", lineno, other),
        }
        if it.next().is_some() {
            bail!("line {}: trailing tokens", lineno);
        }
    }
    Ok(Trace { n: n.ok_or_else(|| anyhow!("missing 'n <count>' header"))?, ops })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOpts {
    pub check_oracle: bool,
    pub validate_every: bool,
}

/// Run statistics; the JSON schema of this struct is stable.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunStats {
    pub n: usize,
    pub ops: usize,
    pub inserts: usize,
    pub rejects: usize,
    pub deletes: usize,
    pub flips_total: u64,
    pub flips_art: u64,
    pub flips_sr: u64,
    pub flips_p: u64,
    pub flips_per_insert: f64,
    pub mismatches: u64,
    pub wall_ms: u64,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub stats: RunStats,
    pub lines: Vec<String>,
    /// Embedding or index invariant violations seen under `validate_every`.
    pub violations: u64,
}

/// Execute a trace against a fresh structure. With `check_oracle`, the
/// maintained planarity bits are compared after every operation against a
/// static planarity test of the full current edge set.
pub fn run_trace(trace: &Trace, opts: RunOpts) -> Result<RunOutput> {
    let start = Instant::now();
    let mut g = GeneralDynamicGraph::new(trace.n);
    let mut lines = Vec::with_capacity(trace.ops.len());
    let mut stats = RunStats { n: trace.n, ops: trace.ops.len(), ..Default::default() };
    let mut violations = 0u64;
    for (i, &op) in trace.ops.iter().enumerate() {
        match op {
            TraceOp::Insert(u, v) => {
                stats.inserts += 1;
                let before = g.planar_structure().edge_count();
                g.insert(VertexId(u), VertexId(v))
                    .with_context(|| format!("op {}: I {} {}", i + 1, u, v))?;
                let embedded = g.planar_structure().edge_count() > before;
                if embedded {
                    lines.push("accepted".into());
                } else {
                    stats.rejects += 1;
                    lines.push("rejected".into());
                }
            }
            TraceOp::Delete(u, v) => {
                stats.deletes += 1;
                g.delete(VertexId(u), VertexId(v))
                    .with_context(|| format!("op {}: D {} {}", i + 1, u, v))?;
                lines.push("ok".into());
            }
            TraceOp::Query(u, v) => {
                let yes = g
                    .query_compatible(VertexId(u), VertexId(v))
                    .with_context(|| format!("op {}: Q {} {}", i + 1, u, v))?;
                lines.push(if yes { "yes" } else { "no" }.into());
            }
            TraceOp::GlobalPlanar => {
                lines.push(if g.is_planar() { "true" } else { "false" }.into());
            }
            TraceOp::CompPlanar(v) => {
                lines.push(if g.component_planar(VertexId(v)) { "true" } else { "false" }.into());
            }
            TraceOp::Neighbors(u, v) => {
                let e = g
                    .planar_structure()
                    .edge_id(VertexId(u), VertexId(v))
                    .ok_or_else(|| anyhow!("op {}: N {} {}: edge not embedded", i + 1, u, v))?;
                let darts = g.planar_structure_mut().embedding_neighbors(e)?;
                let names: Vec<String> = darts
                    .iter()
                    .map(|&d| g.planar_structure().graph().dart_label(d))
                    .collect();
                lines.push(names.join(" "));
            }
        }
        if opts.check_oracle && !g.check_against_static() {
            stats.mismatches += 1;
        }
        if opts.validate_every && !g.planar_structure_mut().check_valid() {
            violations += 1;
        }
    }
    let c = g.planar_structure().counters;
    stats.flips_art = c.articulation;
    stats.flips_sr = c.sr;
    stats.flips_p = c.p;
    stats.flips_total = c.total();
    stats.flips_per_insert = stats.flips_total as f64 / stats.inserts.max(1) as f64;
    stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(RunOutput { stats, lines, violations })
}
