use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ots_core::{run_checks_in, LinearOrder, RunMode, StructureDescriptor};

fn law_suites(c: &mut Criterion) {
    let sd = StructureDescriptor::new(1, LinearOrder::Omega);
    let mut group = c.benchmark_group("law-suites");
    group.sample_size(10);
    for samples in [200u64, 1000] {
        group.bench_with_input(BenchmarkId::new("sequential", samples), &samples, |b, &n| {
            b.iter(|| run_checks_in(RunMode::Sequential, &sd, n, 0))
        });
        group.bench_with_input(BenchmarkId::new("parallel", samples), &samples, |b, &n| {
            b.iter(|| run_checks_in(RunMode::Parallel, &sd, n, 0))
        });
    }
    group.finish();
}

criterion_group!(benches, law_suites);
criterion_main!(benches);
