//! Deterministic workload generators. Given the same parameters and seed the
//! emitted trace is byte-identical.

use crate::trace::{Trace, TraceOp};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    /// Uniform mix of inserts, deletes, queries, and bit reads over random
    /// pairs. Deletes pick an existing edge.
    Random,
    /// Insert-only random pairs; rejections are expected as the graph
    /// saturates.
    PlanarGrowth,
    /// Alternating inserts and deletes keeping the edge count inside a band.
    Churn,
}

impl FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Model::Random),
            "planar-growth" => Ok(Model::PlanarGrowth),
            "churn" => Ok(Model::Churn),
            other => Err(format!("unknown model '{}'", other)),
        }
    }
}

/// Edge-count band maintained by the churn model.
pub fn churn_band(n: usize) -> (usize, usize) {
    (n / 2, n + n / 2)
}

pub fn generate_trace(model: Model, n: usize, ops: usize, seed: u64) -> Trace {
    assert!(n >= 2, "need at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut present_vec: Vec<(u32, u32)> = Vec::new();
    let mut out = Vec::with_capacity(ops);
    let pair = |rng: &mut ChaCha8Rng| -> (u32, u32) {
        let a = rng.gen_range(0..n as u32);
        let mut b = rng.gen_range(0..n as u32);
        while b == a {
            b = rng.gen_range(0..n as u32);
        }
        (a.min(b), a.max(b))
    };
    match model {
        Model::PlanarGrowth => {
            let mut attempted: BTreeSet<(u32, u32)> = BTreeSet::new();
            let total_pairs = n * (n - 1) / 2;
            for _ in 0..ops {
                if attempted.len() == total_pairs {
                    break;
                }
                let mut p = pair(&mut rng);
                while attempted.contains(&p) {
                    p = pair(&mut rng);
                }
                attempted.insert(p);
                out.push(TraceOp::Insert(p.0, p.1));
            }
        }
        Model::Random => {
            for _ in 0..ops {
                let kind = rng.gen_range(0..5);
                match kind {
                    0 => {
                        // insert a fresh pair; fall back to a bit read on a
                        // saturated graph
                        let mut p = pair(&mut rng);
                        let mut tries = 0;
                        while present.contains(&p) && tries < 32 {
                            p = pair(&mut rng);
                            tries += 1;
                        }
                        if present.contains(&p) {
                            out.push(TraceOp::GlobalPlanar);
                        } else {
                            present.insert(p);
                            present_vec.push(p);
                            out.push(TraceOp::Insert(p.0, p.1));
                        }
                    }
                    1 => {
                        if let Some(&p) = present_vec.choose(&mut rng) {
                            present.remove(&p);
                            present_vec.retain(|&q| q != p);
                            out.push(TraceOp::Delete(p.0, p.1));
                        } else {
                            let p = pair(&mut rng);
                            present.insert(p);
                            present_vec.push(p);
                            out.push(TraceOp::Insert(p.0, p.1));
                        }
                    }
                    2 => {
                        let p = pair(&mut rng);
                        out.push(TraceOp::Query(p.0, p.1));
                    }
                    3 => out.push(TraceOp::GlobalPlanar),
                    _ => out.push(TraceOp::CompPlanar(rng.gen_range(0..n as u32))),
                }
            }
        }
        Model::Churn => {
            let (lo, hi) = churn_band(n);
            for _ in 0..ops {
                let want_insert = if present.len() <= lo {
                    true
                } else if present.len() >= hi {
                    false
                } else {
                    rng.gen_bool(0.5)
                };
                if want_insert {
                    let mut p = pair(&mut rng);
                    let mut tries = 0;
                    while present.contains(&p) && tries < 64 {
                        p = pair(&mut rng);
                        tries += 1;
                    }
                    if present.contains(&p) {
                        out.push(TraceOp::GlobalPlanar);
                        continue;
                    }
                    present.insert(p);
                    present_vec.push(p);
                    out.push(TraceOp::Insert(p.0, p.1));
                } else {
                    let &p = present_vec.choose(&mut rng).expect("band keeps edges");
                    present.remove(&p);
                    present_vec.retain(|&q| q != p);
                    out.push(TraceOp::Delete(p.0, p.1));
                }
            }
        }
    }
    Trace { n, ops: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = generate_trace(Model::Random, 16, 500, 7).to_string();
        let b = generate_trace(Model::Random, 16, 500, 7).to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn planar_growth_is_insert_only() {
        let t = generate_trace(Model::PlanarGrowth, 64, 1000, 3);
        assert!(t.ops.iter().all(|op| matches!(op, TraceOp::Insert(..))));
        assert_eq!(t.ops.len(), 1000);
    }

    #[test]
    fn churn_stays_in_band() {
        let t = generate_trace(Model::Churn, 16, 2000, 11);
        let (_, hi) = churn_band(16);
        let mut m = 0usize;
        for op in &t.ops {
            match op {
                TraceOp::Insert(..) => m += 1,
                TraceOp::Delete(..) => m -= 1,
                _ => {}
            }
            assert!(m <= hi);
        }
    }
}
