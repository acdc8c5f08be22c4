//! The search protocol: prepare a uniform register, split it into two arms,
//! phase-mark one arm, overlap the arms, repeat, measure, and check the
//! sample classically. [`enumerate_solutions`] repeats the search, adding each
//! verified sample to the exclusion set, until a round yields nothing new.
//!
//! Randomness: a run owns one [`SeedStream`] built from
//! `SearchConfig::master_seed`. Each `interference_step` and each measurement
//! draws the next child stream, in execution order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::oracle::{BitString, Oracle};
use crate::rng::SeedStream;
use crate::statevec::{
    apply_amplitude_noise_with, apply_phase_oracle, hadamard_uniform, interfere_with, measure,
    Exec, Histogram, StateVector, DEFAULT_NULL_TOLERANCE,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Per-amplitude noise scale; 0 is the ideal device.
    pub delta: f64,
    /// Mark-and-interfere passes applied before measuring.
    pub repetitions: u32,
    pub shots: u64,
    pub master_seed: u64,
    pub null_tolerance: f64,
    /// Enumeration round cap; `None` means `4 · 2^n`.
    pub max_rounds: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            delta: 0.0,
            repetitions: 1,
            shots: 1024,
            master_seed: 0,
            null_tolerance: DEFAULT_NULL_TOLERANCE,
            max_rounds: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.delta.is_finite() || self.delta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delta must be finite and non-negative, got {}",
                self.delta
            )));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidParameter("repetitions must be at least 1".into()));
        }
        if self.shots == 0 {
            return Err(Error::InvalidParameter("shots must be at least 1".into()));
        }
        if self.null_tolerance.is_nan() || self.null_tolerance < 0.0 {
            return Err(Error::InvalidParameter("null tolerance must be non-negative".into()));
        }
        if self.max_rounds == Some(0) {
            return Err(Error::InvalidParameter("max rounds must be at least 1".into()));
        }
        Ok(())
    }

    pub fn round_cap(&self, n: u32) -> u64 {
        self.max_rounds.unwrap_or(4u64 << n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub sampled: BitString,
    /// `oracle(sampled)` and `sampled` not excluded.
    pub verified: bool,
    /// Non-zero Born probabilities of the state that was measured.
    pub post_state_probabilities: BTreeMap<u64, f64>,
    pub histogram: Histogram,
    /// Interference passes applied before measuring.
    pub rounds_used: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The sample failed the classical check and is not a known solution.
    InvalidSample,
    /// The sample is a solution found in an earlier round.
    RepeatSample,
    /// The arms cancelled exactly: no unexcluded solution remains.
    NullInterference,
    RoundCap,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::InvalidSample => "InvalidSample",
            Termination::RepeatSample => "RepeatSample",
            Termination::NullInterference => "NullInterference",
            Termination::RoundCap => "RoundCap",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationReport {
    pub found: BTreeSet<u64>,
    /// Searches started, including the terminating one.
    pub rounds: u64,
    pub terminated_by: Termination,
    /// One entry per round that reached measurement.
    pub per_round_outcomes: Vec<SearchOutcome>,
}

/// One mark-and-interfere pass: the marked arm is `state` with the oracle
/// (and exclusions) applied and then noise; the unmarked arm is `state`
/// itself. Their overlap is renormalized and noise is applied once more.
pub fn interference_step<R: Rng + ?Sized>(
    state: &StateVector,
    oracle: &Oracle,
    exclusions: &BTreeSet<u64>,
    delta: f64,
    rng: &mut R,
) -> Result<StateVector> {
    interference_step_with(state, oracle, exclusions, delta, DEFAULT_NULL_TOLERANCE, rng)
}

pub fn interference_step_with<R: Rng + ?Sized>(
    state: &StateVector,
    oracle: &Oracle,
    exclusions: &BTreeSet<u64>,
    delta: f64,
    null_tolerance: f64,
    rng: &mut R,
) -> Result<StateVector> {
    let marked = apply_phase_oracle(state, oracle, exclusions)?;
    let marked = apply_amplitude_noise_with(&marked, delta, null_tolerance, rng)?;
    let overlap = interfere_with(&marked, state, null_tolerance, Exec::Auto)?;
    apply_amplitude_noise_with(&overlap, delta, null_tolerance, rng)
}

/// Prepares `|+⟩^n`, applies `config.repetitions` interference passes,
/// measures `config.shots` times and verifies the modal outcome classically.
pub fn run_search(
    oracle: &Oracle,
    n: u32,
    exclusions: &BTreeSet<u64>,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    config.validate()?;
    let mut seeds = SeedStream::new(config.master_seed);
    search_round(oracle, n, exclusions, config, &mut seeds)
}

fn search_round(
    oracle: &Oracle,
    n: u32,
    exclusions: &BTreeSet<u64>,
    config: &SearchConfig,
    seeds: &mut SeedStream,
) -> Result<SearchOutcome> {
    if oracle.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: oracle.arity(),
        });
    }
    let mut state = hadamard_uniform(n)?;
    for _ in 0..config.repetitions {
        state = interference_step_with(
            &state,
            oracle,
            exclusions,
            config.delta,
            config.null_tolerance,
            &mut seeds.next_rng(),
        )?;
    }
    let histogram = measure(&state, config.shots, &mut seeds.next_rng())?;
    let index = histogram.modal();
    let verified = oracle.eval_index(index) && !exclusions.contains(&index);
    let post_state_probabilities = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, a)| (i as u64, a.norm_sqr()))
        .collect();
    Ok(SearchOutcome {
        sampled: BitString::new(n, index)?,
        verified,
        post_state_probabilities,
        histogram,
        rounds_used: config.repetitions,
    })
}

/// Finds solutions one per round, excluding each verified sample from later
/// rounds. Stops on an invalid sample, a repeated solution, total
/// cancellation, or the round cap.
pub fn enumerate_solutions(
    oracle: &Oracle,
    n: u32,
    config: &SearchConfig,
) -> Result<EnumerationReport> {
    config.validate()?;
    if oracle.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: oracle.arity(),
        });
    }
    let cap = config.round_cap(n);
    let mut seeds = SeedStream::new(config.master_seed);
    let mut found = BTreeSet::new();
    let mut per_round_outcomes = Vec::new();
    let mut rounds = 0;

    let terminated_by = loop {
        if rounds == cap {
            break Termination::RoundCap;
        }
        rounds += 1;
        let outcome = match search_round(oracle, n, &found, config, &mut seeds) {
            Ok(outcome) => outcome,
            Err(Error::NullInterference { .. }) => break Termination::NullInterference,
            Err(e) => return Err(e),
        };
        let index = outcome.sampled.value();
        let verified = outcome.verified;
        per_round_outcomes.push(outcome);
        if verified {
            found.insert(index);
        } else if found.contains(&index) {
            break Termination::RepeatSample;
        } else {
            break Termination::InvalidSample;
        }
    };

    Ok(EnumerationReport {
        found,
        rounds,
        terminated_by,
        per_round_outcomes,
    })
}
