//! Statevector simulation of interference-amplified quantum search.
//!
//! A uniform register is split into two arms. One arm is phase-marked by a
//! decision function, and the arms are overlapped and renormalized. Invalid
//! basis states cancel, and the solutions remain to be sampled. Repeating
//! the search with found solutions excluded enumerates the whole solution
//! set. The [`optics`] module models the two-arm polarization interferometer
//! that tests the same mechanism on a single qubit.
//!
//! ```
//! use std::collections::BTreeSet;
//! use qinterf_core::{engine, oracle::Oracle};
//!
//! let oracle = Oracle::from_solutions(3, [0b001, 0b011]).unwrap();
//! let report = engine::enumerate_solutions(&oracle, 3, &engine::SearchConfig::default()).unwrap();
//! assert_eq!(report.found, BTreeSet::from([1, 3]));
//! ```

pub mod engine;
mod error;
pub mod optics;
pub mod oracle;
pub mod rng;
pub mod statevec;

pub use engine::{
    enumerate_solutions, interference_step, run_search, EnumerationReport, SearchConfig,
    SearchOutcome, Termination,
};
pub use error::{Error, Result};
pub use optics::{
    apply_element, run_interferometer, sweep_angles, ExperimentResult, InterferometerSpec,
    JonesVector, OpticalElement,
};
pub use oracle::{brute_force_solutions, parse_dimacs, BitString, CnfFormula, Oracle};
pub use statevec::{
    apply_amplitude_noise, apply_phase_oracle, hadamard_uniform, interfere, measure, renormalize,
    Amplitude, Histogram, StateVector,
};
