use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use stci::exec::Execution;
use stci::field::PrimeField;
use stci::fixtures;
use stci::groebner::{self, GbConfig};
use stci::run::{self, CheckId, ExampleName, RunConfig};
use stci::varieties::{self, DEFAULT_BUDGET};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn points(c: &mut Criterion) {
    let j = fixtures::ex1_matrix().ideal_j().unwrap();
    let mut group = c.benchmark_group("points_gf3_11_vars");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| varieties::enumerate_points(black_box(&j), 3, DEFAULT_BUDGET, exec).unwrap())
        });
    }
    group.finish();
}

fn radical(c: &mut Criterion) {
    let m = fixtures::ex1_matrix();
    let f = PrimeField::new(32003).unwrap();
    let j = m.ideal_j().unwrap().to_field(f).unwrap();
    let s = m.stci_system().unwrap().to_field(f).unwrap();
    let mut group = c.benchmark_group("radical_equal_gf32003");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = GbConfig { execution: exec, ..GbConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| groebner::radical_equal(black_box(&j), &s, &cfg).unwrap())
        });
    }
    group.finish();
}

fn min_powers(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_power_table");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = RunConfig {
            checks: vec![CheckId::MinPower],
            execution: exec,
            ..RunConfig::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run::run_example(ExampleName::Ex3, black_box(&cfg)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, points, radical, min_powers);
criterion_main!(benches);
