use rand::seq::index::sample;
use rand::Rng;

use super::{CnfFormula, Literal};

/// Uniform random k-CNF: each clause picks `k` distinct variables and
/// independent polarities. `k` is clamped to `1..=num_vars`.
pub fn random_k_cnf<R: Rng + ?Sized>(
    num_vars: u32,
    num_clauses: usize,
    k: usize,
    rng: &mut R,
) -> CnfFormula {
    assert!(num_vars >= 1, "need at least one variable");
    let k = k.clamp(1, num_vars as usize);
    let clauses = (0..num_clauses)
        .map(|_| {
            let mut vars = sample(rng, num_vars as usize, k).into_vec();
            vars.sort_unstable();
            vars.into_iter()
                .map(|v| Literal::new(v as u32 + 1, rng.random()))
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("generated clauses are in range")
}
