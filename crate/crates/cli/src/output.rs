//! Serializable views of engine and optics results.
//!
//! Basis states are rendered as bit strings, most significant bit first.
//! Field order is fixed by declaration order and maps are sorted, so the
//! same result always serializes to the same bytes. The shapes match the
//! schemas under `schema/`.

use std::collections::BTreeMap;

use qinterf_core::engine::{EnumerationReport, SearchConfig, SearchOutcome};
use qinterf_core::optics::{ExperimentResult, JonesVector, SweepRow};
use qinterf_core::oracle::BitString;
use qinterf_core::statevec::Histogram;
use serde::Serialize;

use crate::format::{fixed12, polarization_label};

pub const TOOL_VERSION: &str = concat!("qinterf ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Serialize)]
pub struct Manifest<C> {
    pub command: &'static str,
    pub versions: &'static str,
    pub master_seed: Option<u64>,
    pub config: C,
}

impl<C> Manifest<C> {
    pub fn new(command: &'static str, master_seed: Option<u64>, config: C) -> Self {
        Self {
            command,
            versions: TOOL_VERSION,
            master_seed,
            config,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchConfigView {
    pub delta: f64,
    pub repetitions: u32,
    pub shots: u64,
    pub master_seed: u64,
    pub null_tolerance: f64,
    pub max_rounds: Option<u64>,
}

impl SearchConfigView {
    /// `round_cap` echoes the resolved enumeration cap; searches pass `false`.
    pub fn new(config: &SearchConfig, n: u32, round_cap: bool) -> Self {
        Self {
            delta: config.delta,
            repetitions: config.repetitions,
            shots: config.shots,
            master_seed: config.master_seed,
            null_tolerance: config.null_tolerance,
            max_rounds: round_cap.then(|| config.round_cap(n)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleView {
    pub source: String,
    pub arity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct HistogramView {
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
}

impl HistogramView {
    pub fn new(histogram: &Histogram) -> Self {
        let n = histogram.n_qubits();
        Self {
            shots: histogram.shots(),
            counts: histogram
                .counts()
                .iter()
                .map(|(&i, &c)| (bits(n, i), c))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub manifest: Manifest<SearchConfigView>,
    pub oracle: OracleView,
    pub sampled: Option<String>,
    pub verified: bool,
    pub terminated_by: Option<&'static str>,
    pub rounds_used: u32,
    pub probabilities: BTreeMap<String, f64>,
    pub histogram: Option<HistogramView>,
}

impl SearchReport {
    pub fn found(manifest: Manifest<SearchConfigView>, oracle: OracleView, outcome: &SearchOutcome) -> Self {
        let n = outcome.sampled.len();
        Self {
            manifest,
            oracle,
            sampled: Some(outcome.sampled.to_string()),
            verified: outcome.verified,
            terminated_by: None,
            rounds_used: outcome.rounds_used,
            probabilities: outcome
                .post_state_probabilities
                .iter()
                .map(|(&i, &p)| (bits(n, i), p))
                .collect(),
            histogram: Some(HistogramView::new(&outcome.histogram)),
        }
    }

    pub fn null(manifest: Manifest<SearchConfigView>, oracle: OracleView) -> Self {
        Self {
            manifest,
            oracle,
            sampled: None,
            verified: false,
            terminated_by: Some("NullInterference"),
            rounds_used: 0,
            probabilities: BTreeMap::new(),
            histogram: None,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = manifest_comment(&self.manifest);
        out.push_str("state,probability,count\n");
        let counts = self.histogram.as_ref().map(|h| &h.counts);
        let mut states: Vec<&String> = self.probabilities.keys().collect();
        if let Some(counts) = counts {
            states.extend(counts.keys());
        }
        states.sort();
        states.dedup();
        for state in states {
            let p = self.probabilities.get(state).copied().unwrap_or(0.0);
            let c = counts.and_then(|c| c.get(state)).copied().unwrap_or(0);
            out.push_str(&format!("{state},{},{c}\n", fixed12(p)));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundView {
    pub round: usize,
    pub sampled: String,
    pub verified: bool,
    pub histogram: HistogramView,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateReport {
    pub manifest: Manifest<SearchConfigView>,
    pub oracle: OracleView,
    pub found: Vec<String>,
    pub rounds: u64,
    pub terminated_by: String,
    pub per_round_outcomes: Vec<RoundView>,
}

impl EnumerateReport {
    pub fn new(
        manifest: Manifest<SearchConfigView>,
        oracle: OracleView,
        report: &EnumerationReport,
    ) -> Self {
        let n = oracle.arity;
        Self {
            manifest,
            oracle,
            found: report.found.iter().map(|&i| bits(n, i)).collect(),
            rounds: report.rounds,
            terminated_by: report.terminated_by.to_string(),
            per_round_outcomes: report
                .per_round_outcomes
                .iter()
                .enumerate()
                .map(|(k, o)| RoundView {
                    round: k + 1,
                    sampled: o.sampled.to_string(),
                    verified: o.verified,
                    histogram: HistogramView::new(&o.histogram),
                })
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = manifest_comment(&self.manifest);
        out.push_str("round,sampled,verified\n");
        for r in &self.per_round_outcomes {
            out.push_str(&format!("{},{},{}\n", r.round, r.sampled, r.verified));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfigView {
    pub element: &'static str,
    pub input: &'static str,
    pub theta_a: f64,
    pub theta_b: f64,
    pub eta: Option<f64>,
    pub split_ratio: f64,
    pub sweep: Option<String>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexView {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct JonesView {
    pub h: ComplexView,
    pub v: ComplexView,
}

impl From<&JonesVector> for JonesView {
    fn from(j: &JonesVector) -> Self {
        Self {
            h: ComplexView { re: j.h.re, im: j.h.im },
            v: ComplexView { re: j.v.re, im: j.v.im },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub manifest: Manifest<ExperimentConfigView>,
    pub raw_output: JonesView,
    pub detection_probability: f64,
    pub normalized_output: Option<&'static str>,
    pub normalized_jones: Option<JonesView>,
    pub vertical_leakage: f64,
}

impl ExperimentReport {
    pub fn new(manifest: Manifest<ExperimentConfigView>, result: &ExperimentResult) -> Self {
        Self {
            manifest,
            raw_output: (&result.raw_output).into(),
            detection_probability: result.detection_probability,
            normalized_output: result.normalized_output.as_ref().map(polarization_label),
            normalized_jones: result.normalized_output.as_ref().map(Into::into),
            vertical_leakage: result.vertical_leakage(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = manifest_comment(&self.manifest);
        out.push_str(SWEEP_HEADER);
        out.push_str(&sweep_line(
            self.manifest.config.theta_a,
            self.detection_probability,
            self.vertical_leakage,
        ));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRowView {
    pub theta_a: f64,
    pub detection_probability: f64,
    pub vertical_leakage: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub manifest: Manifest<ExperimentConfigView>,
    pub rows: Vec<SweepRowView>,
}

impl SweepReport {
    pub fn new(manifest: Manifest<ExperimentConfigView>, rows: &[SweepRow]) -> Self {
        Self {
            manifest,
            rows: rows
                .iter()
                .map(|r| SweepRowView {
                    theta_a: r.value,
                    detection_probability: r.detection_probability,
                    vertical_leakage: r.vertical_leakage,
                })
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = manifest_comment(&self.manifest);
        out.push_str(SWEEP_HEADER);
        for r in &self.rows {
            out.push_str(&sweep_line(r.theta_a, r.detection_probability, r.vertical_leakage));
        }
        out
    }
}

const SWEEP_HEADER: &str = "theta_a_deg,detection_probability,vertical_leakage\n";

fn sweep_line(theta: f64, probability: f64, leakage: f64) -> String {
    format!("{},{},{}\n", fixed12(theta), fixed12(probability), fixed12(leakage))
}

fn bits(n: u32, index: u64) -> String {
    BitString::new(n, index)
        .expect("engine indices are in range")
        .to_string()
}

/// The manifest as a single `# manifest <json>` comment line.
fn manifest_comment<C: Serialize>(manifest: &Manifest<C>) -> String {
    let json = serde_json::to_string(manifest).expect("manifest serializes");
    format!("# manifest {json}\n")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}
