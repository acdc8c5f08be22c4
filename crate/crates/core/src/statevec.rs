//! Complex-amplitude register and the primitive operations of the
//! interference protocol.
//!
//! Every public state is unit-norm. The only non-normalized values are
//! [`Unnormalized`] sums, which must go through [`renormalize`] before they
//! can be used again.
//!
//! Amplitude-wise kernels run on rayon above [`PARALLEL_THRESHOLD`]
//! amplitudes. Reductions accumulate fixed-size chunks and then sum the chunk
//! partials in index order, so serial and parallel execution give identical
//! bits.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::oracle::Oracle;
use crate::{Error, Result};

pub type Amplitude = Complex64;

/// Default largest register size.
pub const DEFAULT_QUBIT_CAP: u32 = 24;
/// Squared norm below which an arm sum counts as total cancellation.
pub const DEFAULT_NULL_TOLERANCE: f64 = 1e-9;
/// Allowed deviation of the squared norm from 1 for a public state.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Registers at least this long use the parallel kernels under [`Exec::Auto`].
pub const PARALLEL_THRESHOLD: usize = 1 << 14;

const REDUCE_CHUNK: usize = 4096;

/// Kernel execution strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Auto,
    Serial,
    Parallel,
}

impl Exec {
    fn parallel(self, len: usize) -> bool {
        match self {
            Exec::Auto => len >= PARALLEL_THRESHOLD,
            Exec::Serial => false,
            Exec::Parallel => true,
        }
    }
}

/// A unit-norm state of `n_qubits` qubits; `amps[i]` is the amplitude of the
/// basis state whose ket reads `i` in binary, leftmost bit most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: u32,
    amps: Vec<Amplitude>,
}

/// A pre-normalization amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Unnormalized {
    n_qubits: u32,
    amps: Vec<Amplitude>,
}

impl StateVector {
    /// Checks length, finiteness and unit norm.
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        let raw = Unnormalized::from_amplitudes(amps)?;
        let norm_sqr = raw.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            n_qubits: raw.n_qubits,
            amps: raw.amps,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: u32, index: u64) -> Result<Self> {
        check_cap(n_qubits, DEFAULT_QUBIT_CAP)?;
        if index >> n_qubits != 0 {
            return Err(Error::IndexOutOfRange { index, n_qubits });
        }
        let mut amps = vec![Amplitude::new(0.0, 0.0); 1 << n_qubits];
        amps[index as usize] = Amplitude::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, index: u64) -> Amplitude {
        self.amps[index as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amps, Exec::Auto)
    }

    /// Born-rule probabilities `|amp_i|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Largest per-component modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.len(), other.len(), "states differ in size");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amps
    }
}

impl Unnormalized {
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "amplitude count {} is not a power of two",
                amps.len()
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite amplitude".into()));
        }
        Ok(Self {
            n_qubits: amps.len().trailing_zeros(),
            amps,
        })
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amps, Exec::Auto)
    }
}

/// Shot counts per basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    n_qubits: u32,
    shots: u64,
    counts: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    /// Non-zero counts keyed by basis index.
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, index: u64) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// Most frequent outcome; ties go to the lowest index.
    pub fn modal(&self) -> u64 {
        let mut best = (0u64, 0u64);
        for (&index, &count) in &self.counts {
            if count > best.1 {
                best = (index, count);
            }
        }
        best.0
    }
}

/// Uniform superposition `2^(−n/2) Σ|x⟩` under the default qubit cap.
pub fn hadamard_uniform(n: u32) -> Result<StateVector> {
    hadamard_uniform_with_cap(n, DEFAULT_QUBIT_CAP)
}

pub fn hadamard_uniform_with_cap(n: u32, cap: u32) -> Result<StateVector> {
    check_cap(n, cap)?;
    let len = 1usize << n;
    let amp = Amplitude::new((len as f64).sqrt().recip(), 0.0);
    Ok(StateVector {
        n_qubits: n,
        amps: vec![amp; len],
    })
}

/// Negates the amplitude of every basis state that the oracle rejects or
/// that appears in `exclusions`. Everything else is copied unchanged.
pub fn apply_phase_oracle(
    state: &StateVector,
    oracle: &Oracle,
    exclusions: &BTreeSet<u64>,
) -> Result<StateVector> {
    apply_phase_oracle_with(state, oracle, exclusions, Exec::Auto)
}

pub fn apply_phase_oracle_with(
    state: &StateVector,
    oracle: &Oracle,
    exclusions: &BTreeSet<u64>,
    exec: Exec,
) -> Result<StateVector> {
    if oracle.arity() != state.n_qubits {
        return Err(Error::ArityMismatch {
            expected: state.n_qubits,
            found: oracle.arity(),
        });
    }
    if let Some(&index) = exclusions.range(state.len() as u64..).next() {
        return Err(Error::IndexOutOfRange {
            index,
            n_qubits: state.n_qubits,
        });
    }
    let mut amps = state.amps.clone();
    let mark = |(i, a): (usize, &mut Amplitude)| {
        let i = i as u64;
        if !oracle.eval_index(i) || exclusions.contains(&i) {
            *a = -*a;
        }
    };
    if exec.parallel(amps.len()) {
        amps.par_iter_mut().enumerate().for_each(mark);
    } else {
        amps.iter_mut().enumerate().for_each(mark);
    }
    Ok(StateVector {
        n_qubits: state.n_qubits,
        amps,
    })
}

/// Coherent overlap of two arms: componentwise sum, not yet normalized.
pub fn superpose(arm_a: &StateVector, arm_b: &StateVector, exec: Exec) -> Result<Unnormalized> {
    if arm_a.n_qubits != arm_b.n_qubits {
        return Err(Error::ShapeMismatch {
            left: arm_a.n_qubits,
            right: arm_b.n_qubits,
        });
    }
    let mut amps = arm_a.amps.clone();
    if exec.parallel(amps.len()) {
        amps.par_iter_mut()
            .zip(arm_b.amps.par_iter())
            .for_each(|(a, b)| *a += b);
    } else {
        amps.iter_mut().zip(&arm_b.amps).for_each(|(a, b)| *a += b);
    }
    Ok(Unnormalized {
        n_qubits: arm_a.n_qubits,
        amps,
    })
}

/// Sums the arms and renormalizes; total cancellation is
/// [`Error::NullInterference`].
pub fn interfere(arm_a: &StateVector, arm_b: &StateVector) -> Result<StateVector> {
    interfere_with(arm_a, arm_b, DEFAULT_NULL_TOLERANCE, Exec::Auto)
}

pub fn interfere_with(
    arm_a: &StateVector,
    arm_b: &StateVector,
    null_tolerance: f64,
    exec: Exec,
) -> Result<StateVector> {
    let raw = superpose(arm_a, arm_b, exec)?;
    renormalize_with(raw, null_tolerance, exec)
}

/// Divides by the norm. Fails with [`Error::NullInterference`] when the
/// squared norm is below `null_tolerance`.
pub fn renormalize(raw: Unnormalized, null_tolerance: f64) -> Result<StateVector> {
    renormalize_with(raw, null_tolerance, Exec::Auto)
}

pub fn renormalize_with(raw: Unnormalized, null_tolerance: f64, exec: Exec) -> Result<StateVector> {
    let norm_sqr = norm_sqr(&raw.amps, exec);
    if norm_sqr.is_nan() || norm_sqr < null_tolerance {
        return Err(Error::NullInterference {
            norm_sqr,
            tolerance: null_tolerance,
        });
    }
    let scale = norm_sqr.sqrt().recip();
    let mut amps = raw.amps;
    if exec.parallel(amps.len()) {
        amps.par_iter_mut().for_each(|a| *a *= scale);
    } else {
        amps.iter_mut().for_each(|a| *a *= scale);
    }
    Ok(StateVector {
        n_qubits: raw.n_qubits,
        amps,
    })
}

/// Multiplies amplitude `i` by `1 + delta·g_i`, with `g_i` a standard complex
/// Gaussian (real and imaginary parts independent, each of variance 1/2), and
/// renormalizes. `delta == 0` returns the input unchanged.
pub fn apply_amplitude_noise<R: Rng + ?Sized>(
    state: &StateVector,
    delta: f64,
    rng: &mut R,
) -> Result<StateVector> {
    apply_amplitude_noise_with(state, delta, DEFAULT_NULL_TOLERANCE, rng)
}

pub fn apply_amplitude_noise_with<R: Rng + ?Sized>(
    state: &StateVector,
    delta: f64,
    null_tolerance: f64,
    rng: &mut R,
) -> Result<StateVector> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "noise scale must be finite and non-negative, got {delta}"
        )));
    }
    if delta == 0.0 {
        return Ok(state.clone());
    }
    let scale = delta * std::f64::consts::FRAC_1_SQRT_2;
    let amps = state
        .amps
        .iter()
        .map(|a| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            a * Amplitude::new(1.0 + scale * re, scale * im)
        })
        .collect();
    renormalize(
        Unnormalized {
            n_qubits: state.n_qubits,
            amps,
        },
        null_tolerance,
    )
}

/// Draws `shots` independent outcomes with probability `|amp_i|²`.
pub fn measure<R: Rng + ?Sized>(state: &StateVector, shots: u64, rng: &mut R) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be positive".into()));
    }
    let norm_sqr = state.norm_sqr();
    if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm_sqr });
    }
    let dist = WeightedIndex::new(state.probabilities())
        .map_err(|e| Error::InvalidParameter(format!("cannot sample state: {e}")))?;
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(rng) as u64).or_insert(0) += 1;
    }
    Ok(Histogram {
        n_qubits: state.n_qubits,
        shots,
        counts,
    })
}

/// Squared norm with a fixed chunked summation order.
pub fn norm_sqr(amps: &[Amplitude], exec: Exec) -> f64 {
    let chunk_sum = |chunk: &[Amplitude]| chunk.iter().map(|a| a.norm_sqr()).sum::<f64>();
    let partials: Vec<f64> = if exec.parallel(amps.len()) {
        amps.par_chunks(REDUCE_CHUNK).map(chunk_sum).collect()
    } else {
        amps.chunks(REDUCE_CHUNK).map(chunk_sum).collect()
    };
    partials.into_iter().sum()
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap || n >= usize::BITS - 1 {
        return Err(Error::CapExceeded {
            what: "qubit count",
            requested: n.into(),
            cap: cap.into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Builtin;
    use crate::rng::child_rng;
    use proptest::prelude::*;
    use rand::Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Amplitude {
        Amplitude::new(re, im)
    }

    fn two_solution_oracle() -> Oracle {
        Oracle::from_solutions(3, [1, 3]).unwrap()
    }

    fn signs(state: &StateVector) -> Vec<i8> {
        state
            .amplitudes()
            .iter()
            .map(|a| if a.re < 0.0 { -1 } else { 1 })
            .collect()
    }

    fn random_state(n: u32, seed: u64) -> StateVector {
        let mut rng = child_rng(seed, 0);
        let amps: Vec<Amplitude> = (0..1usize << n)
            .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        renormalize(Unnormalized::from_amplitudes(amps).unwrap(), 0.0).unwrap()
    }

    #[test]
    fn uniform_states() {
        assert_eq!(hadamard_uniform(0).unwrap().amplitudes(), &[c(1.0, 0.0)]);
        let one = hadamard_uniform(1).unwrap();
        for a in one.amplitudes() {
            assert!((a.re - FRAC_1_SQRT_2).abs() < 1e-15 && a.im == 0.0);
        }
        let three = hadamard_uniform(3).unwrap();
        assert_eq!(three.len(), 8);
        for a in three.amplitudes() {
            assert!((a.re - 0.353_553_390_593_273_8).abs() < 1e-15);
        }
        assert!(matches!(hadamard_uniform(25), Err(Error::CapExceeded { .. })));
        assert!(hadamard_uniform_with_cap(4, 3).is_err());
    }

    #[test]
    fn phase_marking_of_invalid_states() {
        let psi = hadamard_uniform(3).unwrap();
        let marked = apply_phase_oracle(&psi, &two_solution_oracle(), &BTreeSet::new()).unwrap();
        assert_eq!(signs(&marked), vec![-1, 1, -1, 1, -1, -1, -1, -1]);

        let excluded =
            apply_phase_oracle(&psi, &two_solution_oracle(), &BTreeSet::from([1])).unwrap();
        assert_eq!(signs(&excluded), vec![-1, -1, -1, 1, -1, -1, -1, -1]);

        let all_true = Oracle::builtin(Builtin::AllTrue, 3).unwrap();
        assert_eq!(apply_phase_oracle(&psi, &all_true, &BTreeSet::new()).unwrap(), psi);
    }

    #[test]
    fn phase_oracle_errors() {
        let psi = hadamard_uniform(2).unwrap();
        assert_eq!(
            apply_phase_oracle(&psi, &two_solution_oracle(), &BTreeSet::new()),
            Err(Error::ArityMismatch { expected: 2, found: 3 })
        );
        let oracle = Oracle::builtin(Builtin::AllTrue, 2).unwrap();
        assert!(matches!(
            apply_phase_oracle(&psi, &oracle, &BTreeSet::from([4])),
            Err(Error::IndexOutOfRange { index: 4, .. })
        ));
    }

    #[test]
    fn interference_exposes_solutions() {
        let psi = hadamard_uniform(3).unwrap();
        let marked = apply_phase_oracle(&psi, &two_solution_oracle(), &BTreeSet::new()).unwrap();
        let out = interfere(&marked, &psi).unwrap();
        for (i, a) in out.amplitudes().iter().enumerate() {
            let expected = if i == 1 || i == 3 { FRAC_1_SQRT_2 } else { 0.0 };
            assert!((a - c(expected, 0.0)).norm() < 1e-12, "index {i}: {a}");
        }
    }

    #[test]
    fn interference_symmetric_and_null_cases() {
        let phi = random_state(3, 11);
        let same = interfere(&phi, &phi).unwrap();
        assert!(same.max_abs_diff(&phi) < 1e-15);

        let neg = StateVector::from_amplitudes(phi.amplitudes().iter().map(|a| -a).collect())
            .unwrap();
        assert!(matches!(interfere(&phi, &neg), Err(Error::NullInterference { .. })));

        let small = hadamard_uniform(2).unwrap();
        assert_eq!(
            interfere(&phi, &small),
            Err(Error::ShapeMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn renormalize_examples() {
        let out = renormalize(Unnormalized::from_amplitudes(vec![c(2.0, 0.0), c(0.0, 0.0)]).unwrap(), 1e-9)
            .unwrap();
        assert_eq!(out.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);

        let unit = vec![c(0.6, 0.0), c(0.0, 0.8)];
        let out = renormalize(Unnormalized::from_amplitudes(unit.clone()).unwrap(), 1e-9).unwrap();
        for (a, b) in out.amplitudes().iter().zip(&unit) {
            assert!((a - b).norm() < 1e-15);
        }

        // 1e-3 / (sqrt(2) * 1e-3), computed independently.
        let out = renormalize(
            Unnormalized::from_amplitudes(vec![c(1e-3, 0.0), c(1e-3, 0.0)]).unwrap(),
            1e-9,
        )
        .unwrap();
        for a in out.amplitudes() {
            assert!((a.re - 0.707_106_781_186_547_5).abs() < 1e-15);
        }
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);

        let tiny = Unnormalized::from_amplitudes(vec![c(1e-6, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(renormalize(tiny, 1e-9), Err(Error::NullInterference { .. })));
    }

    #[test]
    fn construction_checks() {
        assert!(StateVector::from_amplitudes(vec![c(1.0, 0.0); 3]).is_err());
        assert!(matches!(
            StateVector::from_amplitudes(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(StateVector::from_amplitudes(vec![c(f64::NAN, 0.0), c(0.0, 0.0)]).is_err());
        assert_eq!(StateVector::basis(2, 3).unwrap().amplitude(3), c(1.0, 0.0));
    }

    #[test]
    fn noise_zero_is_identity_and_seeded_noise_is_deterministic() {
        let psi = random_state(4, 3);
        let same = apply_amplitude_noise(&psi, 0.0, &mut child_rng(1, 0)).unwrap();
        assert_eq!(same, psi);

        let a = apply_amplitude_noise(&psi, 1e-2, &mut child_rng(5, 9)).unwrap();
        let b = apply_amplitude_noise(&psi, 1e-2, &mut child_rng(5, 9)).unwrap();
        assert_eq!(a, b);
        assert!(a != psi);
        assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(apply_amplitude_noise(&psi, -1.0, &mut child_rng(0, 0)).is_err());
        assert!(apply_amplitude_noise(&psi, f64::NAN, &mut child_rng(0, 0)).is_err());
    }

    #[test]
    fn noise_matches_direct_recomputation() {
        let psi = hadamard_uniform(3).unwrap();
        let delta = 1e-2;
        let noisy = apply_amplitude_noise(&psi, delta, &mut child_rng(42, 0)).unwrap();

        // Redraw the same Gaussians and rebuild the state by hand.
        let mut rng = child_rng(42, 0);
        let raw: Vec<Amplitude> = psi
            .amplitudes()
            .iter()
            .map(|a| {
                let g = c(rng.sample(StandardNormal), rng.sample(StandardNormal)) / 2f64.sqrt();
                a * (c(1.0, 0.0) + g * delta)
            })
            .collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let mut max_rel = 0.0f64;
        for (got, want) in noisy.amplitudes().iter().zip(&raw) {
            assert!((got - want / norm).norm() < 1e-15);
            max_rel = max_rel.max(((got - psi.amplitude(0)) / psi.amplitude(0)).norm());
        }
        assert!(max_rel > 1e-4 && max_rel < 1e-1, "relative deviation {max_rel}");
    }

    #[test]
    fn measure_examples() {
        let zero = StateVector::basis(1, 0).unwrap();
        let h = measure(&zero, 100, &mut child_rng(0, 0)).unwrap();
        assert_eq!(h.counts(), &BTreeMap::from([(0, 100)]));

        let psi = hadamard_uniform(3).unwrap();
        let marked = apply_phase_oracle(&psi, &two_solution_oracle(), &BTreeSet::new()).unwrap();
        let exposed = interfere(&marked, &psi).unwrap();
        let h = measure(&exposed, 100_000, &mut child_rng(1, 0)).unwrap();
        assert_eq!(h.counts().keys().copied().collect::<Vec<_>>(), vec![1, 3]);
        let sigma = (100_000f64 * 0.25).sqrt();
        for i in [1, 3] {
            assert!((h.count(i) as f64 - 50_000.0).abs() < 3.0 * sigma);
        }

        let uniform = hadamard_uniform(2).unwrap();
        let h = measure(&uniform, 40_000, &mut child_rng(2, 0)).unwrap();
        let sigma = (40_000f64 * 0.25 * 0.75).sqrt();
        for i in 0..4 {
            assert!((h.count(i) as f64 - 10_000.0).abs() < 3.0 * sigma);
        }
        assert_eq!(h.counts().values().sum::<u64>(), 40_000);
    }

    #[test]
    fn measure_rejects_bad_input() {
        let psi = hadamard_uniform(1).unwrap();
        assert!(measure(&psi, 0, &mut child_rng(0, 0)).is_err());
    }

    #[test]
    fn modal_tie_goes_to_lowest_index() {
        let h = Histogram {
            n_qubits: 2,
            shots: 4,
            counts: BTreeMap::from([(1, 2), (3, 2)]),
        };
        assert_eq!(h.modal(), 1);
    }

    #[test]
    fn serial_and_parallel_kernels_agree() {
        let n = 15;
        let psi = random_state(n, 99);
        let oracle = Oracle::builtin(Builtin::Parity, n).unwrap();
        let excl = BTreeSet::from([5, 77, 1 << 14]);
        let s = apply_phase_oracle_with(&psi, &oracle, &excl, Exec::Serial).unwrap();
        let p = apply_phase_oracle_with(&psi, &oracle, &excl, Exec::Parallel).unwrap();
        assert_eq!(s, p);

        let s = interfere_with(&s, &psi, 1e-9, Exec::Serial).unwrap();
        let p = interfere_with(&p, &psi, 1e-9, Exec::Parallel).unwrap();
        assert!(s.max_abs_diff(&p) <= 1e-12);

        let naive: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        let chunked = norm_sqr(psi.amplitudes(), Exec::Parallel);
        assert!((naive - chunked).abs() < 1e-12);
        assert_eq!(chunked, norm_sqr(psi.amplitudes(), Exec::Serial));
    }

    proptest! {
        #[test]
        fn oracle_is_an_involution(n in 0u32..7, seed in any::<u64>(), table_bits in any::<u64>(), excl_bits in any::<u64>()) {
            let psi = random_state(n, seed);
            let size = 1u64 << n;
            let oracle = Oracle::from_solutions(n, (0..size).filter(|i| table_bits >> i & 1 == 1)).unwrap();
            let excl: BTreeSet<u64> = (0..size).filter(|i| excl_bits >> i & 1 == 1).collect();
            let once = apply_phase_oracle(&psi, &oracle, &excl).unwrap();
            prop_assert!((once.norm_sqr() - 1.0).abs() < 1e-9);
            let twice = apply_phase_oracle(&once, &oracle, &excl).unwrap();
            prop_assert_eq!(twice, psi);
        }

        #[test]
        fn interference_is_projection_onto_unexcluded_solutions(
            n in 1u32..7, seed in any::<u64>(), table_bits in any::<u64>(), excl_bits in any::<u64>()
        ) {
            let psi = random_state(n, seed);
            let size = 1u64 << n;
            let oracle = Oracle::from_solutions(n, (0..size).filter(|i| table_bits >> i & 1 == 1)).unwrap();
            let excl: BTreeSet<u64> = (0..size).filter(|i| excl_bits >> i & 1 == 1).collect();
            let keep = |i: u64| oracle.eval_index(i) && !excl.contains(&i);

            // Projection computed directly from the definition.
            let projected: Vec<Amplitude> = (0..size)
                .map(|i| if keep(i) { psi.amplitude(i) } else { c(0.0, 0.0) })
                .collect();
            let mass: f64 = projected.iter().map(|a| a.norm_sqr()).sum();

            let marked = apply_phase_oracle(&psi, &oracle, &excl).unwrap();
            match interfere(&marked, &psi) {
                Ok(out) => {
                    let norm = mass.sqrt();
                    for (got, want) in out.amplitudes().iter().zip(&projected) {
                        prop_assert!((got - want / norm).norm() < 1e-12);
                    }
                    prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-9);
                }
                Err(Error::NullInterference { .. }) => prop_assert!(4.0 * mass < 1e-9),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }

        #[test]
        fn noise_preserves_norm(n in 0u32..6, seed in any::<u64>(), delta in 0.0f64..0.2) {
            let psi = random_state(n, seed);
            let out = apply_amplitude_noise(&psi, delta, &mut child_rng(seed, 1)).unwrap();
            prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }
}
