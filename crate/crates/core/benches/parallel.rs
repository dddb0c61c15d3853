use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use loghyper::batch::{admissible_tuples, compute_table};
use loghyper::congruence::{default_corpus, run_suites, Statement, SuiteConfig};
use loghyper::par::Exec;

fn table(c: &mut Criterion) {
    let tuples = admissible_tuples(11, 10).unwrap();
    let mut group = c.benchmark_group("table_p11_N10");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| compute_table(&tuples, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let corpus = default_corpus(5).unwrap();
    let cfg = SuiteConfig { n: 2, max_m: None };
    let mut group = c.benchmark_group("suites_p5_n2");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| run_suites(&Statement::ALL, &corpus, cfg, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, table, suites);
criterion_main!(benches);
