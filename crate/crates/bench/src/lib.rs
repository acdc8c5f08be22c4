//! Fixtures shared by the benchmarks.

use qinterf_core::oracle::{random_k_cnf, Oracle};
use qinterf_core::rng::child_rng;

/// A random 3-CNF oracle at the usual hard clause density (≈4.26 clauses per
/// variable), reproducible from `seed`.
pub fn hard_cnf(n: u32, seed: u64) -> Oracle {
    let clauses = (4.26 * f64::from(n)).round() as usize;
    Oracle::cnf(random_k_cnf(n, clauses, 3, &mut child_rng(seed, 0)))
}

/// Sparse truth-table oracle with solutions every `stride` indices.
pub fn strided_solutions(n: u32, stride: u64) -> Oracle {
    Oracle::from_solutions(n, (0..1u64 << n).step_by(stride as usize)).expect("n within cap")
}
