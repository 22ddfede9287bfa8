//! Parallel vs sequential case execution on a few representative suites.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use springer_core::verify::{run_suite, SuiteConfig};
use springer_core::Execution;

fn config(suite: &str, execution: Execution) -> SuiteConfig {
    SuiteConfig {
        suites: vec![suite.to_string()],
        primes: vec![2, 3, 5],
        trials: Some(20),
        max_n: 6,
        max_n_small: 5,
        execution,
        ..SuiteConfig::default()
    }
}

fn bench_suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for suite in ["frobenius", "centralizer", "eps-bch", "witt-hom"] {
        for (label, exec) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
            let cfg = config(suite, exec);
            group.bench_with_input(BenchmarkId::new(suite, label), &cfg, |b, cfg| {
                b.iter(|| black_box(run_suite(cfg).expect("valid config")))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_suites);
criterion_main!(benches);
