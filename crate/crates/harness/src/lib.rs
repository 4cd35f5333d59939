//! Trace execution, workload generation, oracle diffing, and amortized-flip
//! sweeps over the dynamic planarity structures.

pub mod gen;
pub mod sweep;
pub mod trace;
