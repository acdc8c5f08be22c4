use std::collections::BTreeSet;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use qinterf_bench::{hard_cnf, strided_solutions};
use qinterf_core::engine::{enumerate_solutions, interference_step, SearchConfig};
use qinterf_core::optics::{run_interferometer, ElementKind, InterferometerSpec};
use qinterf_core::oracle::{brute_force_solutions, parse_dimacs};
use qinterf_core::rng::child_rng;
use qinterf_core::statevec::{hadamard_uniform, measure};

fn bench_interference_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("interference_step");
    for n in [12u32, 16, 20] {
        let state = hadamard_uniform(n).unwrap();
        let table = strided_solutions(n, 97);
        let cnf = hard_cnf(n, 1);
        let none = BTreeSet::new();
        group.throughput(Throughput::Elements(1 << n));
        group.bench_with_input(BenchmarkId::new("truth_table", n), &n, |b, _| {
            b.iter(|| interference_step(&state, &table, &none, 0.0, &mut child_rng(0, 0)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("cnf", n), &n, |b, _| {
            b.iter(|| interference_step(&state, &cnf, &none, 0.0, &mut child_rng(0, 0)))
        });
        group.bench_with_input(BenchmarkId::new("noisy_truth_table", n), &n, |b, _| {
            b.iter(|| interference_step(&state, &table, &none, 1e-2, &mut child_rng(0, 0)).unwrap())
        });
    }
    group.finish();
}

fn bench_measure(c: &mut Criterion) {
    let mut group = c.benchmark_group("measure");
    for n in [8u32, 16] {
        let state = hadamard_uniform(n).unwrap();
        group.bench_with_input(BenchmarkId::new("shots_1e4", n), &state, |b, s| {
            b.iter(|| measure(s, 10_000, &mut child_rng(0, 0)).unwrap())
        });
    }
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let oracle = strided_solutions(10, 64);
    let config = SearchConfig { shots: 64, ..SearchConfig::default() };
    c.bench_function("enumerate_16_solutions_n10", |b| {
        b.iter(|| enumerate_solutions(black_box(&oracle), 10, &config).unwrap())
    });
    let cnf = hard_cnf(16, 3);
    c.bench_function("brute_force_cnf_n16", |b| {
        b.iter(|| brute_force_solutions(black_box(&cnf)).unwrap())
    });
}

fn bench_dimacs(c: &mut Criterion) {
    let qinterf_core::oracle::OracleBody::Cnf(formula) = hard_cnf(20, 5).body().clone() else {
        unreachable!()
    };
    let text = formula.to_dimacs();
    c.bench_function("parse_dimacs_uf20", |b| b.iter(|| parse_dimacs(black_box(&text)).unwrap()));
}

fn bench_optics(c: &mut Criterion) {
    let spec = InterferometerSpec::symmetric(ElementKind::Rotator, 45.0, -45.0);
    c.bench_function("run_interferometer", |b| b.iter(|| run_interferometer(black_box(&spec))));
}

criterion_group!(
    benches,
    bench_interference_step,
    bench_measure,
    bench_enumeration,
    bench_dimacs,
    bench_optics
);
criterion_main!(benches);
