use std::collections::BTreeSet;
use std::fs;

use anyhow::{anyhow, bail, Context};
use qinterf_core::engine::{enumerate_solutions, run_search, SearchConfig, Termination};
use qinterf_core::optics::{
    run_interferometer, sweep_angles, AngleParam, Arm, ElementKind, InterferometerSpec,
    OpticalElement,
};
use qinterf_core::oracle::{parse_dimacs, BitString, Builtin, Oracle};
use qinterf_core::Error;

use crate::args::{ElementArg, EnumerateArgs, ExperimentArgs, Format, OracleArgs, RunArgs, SearchArgs};
use crate::output::{
    to_json, EnumerateReport, ExperimentConfigView, ExperimentReport, Manifest, OracleView,
    SearchConfigView, SearchReport, SweepReport,
};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const NO_SOLUTION: i32 = 2;
    pub const ROUND_CAP: i32 = 3;
}

/// What a command prints on stdout and the exit code it ends with.
pub struct Completed {
    pub stdout: String,
    pub code: i32,
}

/// Largest sweep accepted on the command line.
const MAX_SWEEP_ROWS: usize = 1_000_000;

pub fn search(args: &SearchArgs) -> anyhow::Result<Completed> {
    let (oracle, view) = load_oracle(&args.oracle)?;
    let config = search_config(&args.run, None);
    let n = oracle.arity();
    let manifest = Manifest::new("search", Some(config.master_seed), SearchConfigView::new(&config, n, false));
    let (report, code) = match run_search(&oracle, n, &BTreeSet::new(), &config) {
        Ok(outcome) => {
            let code = if outcome.verified { exit::SUCCESS } else { exit::NO_SOLUTION };
            (SearchReport::found(manifest, view, &outcome), code)
        }
        Err(Error::NullInterference { .. }) => (SearchReport::null(manifest, view), exit::NO_SOLUTION),
        Err(e) => return Err(e.into()),
    };
    let stdout = match args.format.resolve(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => report.to_csv(),
    };
    Ok(Completed { stdout, code })
}

pub fn enumerate(args: &EnumerateArgs) -> anyhow::Result<Completed> {
    let (oracle, view) = load_oracle(&args.oracle)?;
    let config = search_config(&args.run, args.max_rounds);
    let n = oracle.arity();
    let report = enumerate_solutions(&oracle, n, &config)?;
    let manifest = Manifest::new("enumerate", Some(config.master_seed), SearchConfigView::new(&config, n, true));
    let code = if report.terminated_by == Termination::RoundCap {
        exit::ROUND_CAP
    } else {
        exit::SUCCESS
    };
    let report = EnumerateReport::new(manifest, view, &report);
    let stdout = match args.format.resolve(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => report.to_csv(),
    };
    Ok(Completed { stdout, code })
}

pub fn experiment(args: &ExperimentArgs) -> anyhow::Result<Completed> {
    let kind = match args.element {
        ElementArg::Rotator => ElementKind::Rotator,
        ElementArg::Polarizer => ElementKind::Polarizer,
    };
    let mut spec = InterferometerSpec::symmetric(kind, args.theta_a, args.theta_b);
    spec.split_ratio = args.split;
    if let Some(eta) = args.eta {
        spec.arm_a.push(OpticalElement::Attenuator { eta });
    }
    spec.validate()?;
    let config = ExperimentConfigView {
        element: match args.element {
            ElementArg::Rotator => "rotator",
            ElementArg::Polarizer => "polarizer",
        },
        input: "V",
        theta_a: args.theta_a,
        theta_b: args.theta_b,
        eta: args.eta,
        split_ratio: args.split,
        sweep: args.sweep.clone(),
    };
    let manifest = Manifest::new("experiment", None, config);

    let stdout = match &args.sweep {
        Some(range) => {
            let values = parse_sweep(range)?;
            let rows = sweep_angles(&spec, AngleParam { arm: Arm::A, index: 0 }, &values)?;
            let report = SweepReport::new(manifest, &rows);
            match args.format.resolve(Format::Csv) {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv(),
            }
        }
        None => {
            let report = ExperimentReport::new(manifest, &run_interferometer(&spec)?);
            match args.format.resolve(Format::Json) {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv(),
            }
        }
    };
    Ok(Completed {
        stdout,
        code: exit::SUCCESS,
    })
}

fn search_config(run: &RunArgs, max_rounds: Option<u64>) -> SearchConfig {
    SearchConfig {
        delta: run.delta,
        repetitions: run.reps,
        shots: run.shots,
        master_seed: run.seed,
        null_tolerance: run.null_tolerance,
        max_rounds,
    }
}

fn load_oracle(args: &OracleArgs) -> anyhow::Result<(Oracle, OracleView)> {
    let (oracle, source) = match (&args.source.cnf, &args.source.builtin) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let formula =
                parse_dimacs(&text).with_context(|| format!("{}", path.display()))?;
            let oracle = Oracle::cnf(formula);
            if let Some(n) = args.n {
                if n != oracle.arity() {
                    bail!("--n {n} does not match the {} variables of {}", oracle.arity(), path.display());
                }
            }
            (oracle, format!("cnf:{}", path.display()))
        }
        (None, Some(name)) => (builtin(name, args.n)?, format!("builtin:{name}")),
        (None, None) => bail!("one of --cnf or --builtin is required"),
    };
    let view = OracleView {
        source,
        arity: oracle.arity(),
    };
    Ok((oracle, view))
}

fn builtin(name: &str, n: Option<u32>) -> anyhow::Result<Oracle> {
    let need_n = || n.ok_or_else(|| anyhow!("--builtin {name} requires --n"));
    let oracle = match name {
        "all-true" => Oracle::builtin(Builtin::AllTrue, need_n()?)?,
        "all-false" => Oracle::builtin(Builtin::AllFalse, need_n()?)?,
        "parity" => Oracle::builtin(Builtin::Parity, need_n()?)?,
        // Three qubits, solutions |001⟩ and |011⟩.
        "eq7demo" => {
            if n.is_some_and(|n| n != 3) {
                bail!("--builtin eq7demo is defined for --n 3 only");
            }
            Oracle::from_solutions(3, [0b001, 0b011])?
        }
        _ => match name.strip_prefix("single:") {
            Some(bits) => {
                let target: BitString = bits
                    .parse()
                    .map_err(|e| anyhow!("bad single-solution target `{bits}`: {e}"))?;
                if n.is_some_and(|n| n != target.len()) {
                    bail!("--n does not match the {}-bit target `{bits}`", target.len());
                }
                Oracle::builtin(Builtin::SingleSolution(target.value()), target.len())?
            }
            None => bail!(
                "unknown builtin `{name}` (expected all-true, all-false, parity, eq7demo, single:<bits>)"
            ),
        },
    };
    Ok(oracle)
}

/// Inclusive arithmetic range `start:stop:step`.
pub fn parse_sweep(range: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = range.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        bail!("--sweep expects start:stop:step, got `{range}`");
    };
    let parse = |s: &str| -> anyhow::Result<f64> {
        let v: f64 = s.trim().parse().with_context(|| format!("`{s}` is not a number"))?;
        if !v.is_finite() {
            bail!("`{s}` is not finite");
        }
        Ok(v)
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if step == 0.0 {
        bail!("--sweep step must be non-zero");
    }
    let span = (stop - start) / step;
    if span < -1e-9 {
        bail!("--sweep step moves away from stop");
    }
    let steps = (span + 1e-9).floor();
    if steps >= MAX_SWEEP_ROWS as f64 {
        bail!("--sweep would produce more than {MAX_SWEEP_ROWS} rows");
    }
    Ok((0..=steps as usize).map(|k| start + k as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_ranges() {
        let v = parse_sweep("40:50:1").unwrap();
        assert_eq!(v.len(), 11);
        assert_eq!(v[0], 40.0);
        assert_eq!(v[10], 50.0);
        assert_eq!(parse_sweep("0:1:0.1").unwrap().len(), 11);
        assert_eq!(parse_sweep("10:0:-5").unwrap(), vec![10.0, 5.0, 0.0]);
        assert_eq!(parse_sweep("3:3:1").unwrap(), vec![3.0]);
        assert!(parse_sweep("0:10:0").is_err());
        assert!(parse_sweep("0:10:-1").is_err());
        assert!(parse_sweep("0:10").is_err());
        assert!(parse_sweep("a:10:1").is_err());
        assert!(parse_sweep("0:1e9:1e-3").is_err());
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin("eq7demo", None).unwrap().arity(), 3);
        assert!(builtin("eq7demo", Some(4)).is_err());
        assert!(builtin("all-false", None).is_err());
        assert_eq!(builtin("parity", Some(5)).unwrap().arity(), 5);
        let single = builtin("single:111", None).unwrap();
        assert!(single.eval_index(7) && !single.eval_index(6));
        assert!(builtin("single:101", Some(4)).is_err());
        assert!(builtin("single:1x1", None).is_err());
        assert!(builtin("nope", Some(2)).is_err());
    }
}
