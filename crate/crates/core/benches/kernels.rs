use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wonderful_core::forest_series::{working_truncation, SeriesBundle};
use wonderful_core::oracle::{OracleLimits, Poset};
use wonderful_core::poincare::ModelType;
use wonderful_core::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn series_product(c: &mut Criterion) {
    let bundle = SeriesBundle::compute(6).unwrap();
    let a = &bundle.working.tree_a;
    let b = &bundle.working.forest_a;
    assert_eq!(a.truncation(), working_truncation(6).unwrap());
    let mut group = c.benchmark_group("series_mul_degree7");
    for (name, exec) in MODES {
        group.bench_function(name, |bench| {
            bench.iter(|| black_box(a.mul_with(b, exec).unwrap()))
        });
    }
    group.finish();
}

fn recursions(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_bundle");
    group.sample_size(10);
    for degree in [5, 6] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, degree), &degree, |bench, &d| {
                bench.iter(|| black_box(SeriesBundle::compute_with(d, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_census");
    group.sample_size(10);
    for (model, n) in [(ModelType::A, 7), (ModelType::B, 5)] {
        for (name, exec) in MODES {
            let poset = Poset::build_with(model, n, OracleLimits::default(), exec).unwrap();
            group.bench_with_input(
                BenchmarkId::new(name, format!("{model}{n}")),
                &poset,
                |bench, p| bench.iter(|| black_box(p.poincare(1, exec))),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, series_product, recursions, oracle);
criterion_main!(benches);
