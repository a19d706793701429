use cctp_core::batch::{par_map, seq_map};
use cctp_core::experiment::{offline_optimum, run_scenario, RunOptions};
use cctp_core::random::{generate_random_scenario, Geometry};
use cctp_core::Scenario;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn batch(count: usize, n: usize) -> Vec<Scenario> {
    (0..count as u64)
        .map(|seed| generate_random_scenario(n, n / 2, seed, Geometry::Euclidean).unwrap())
        .collect()
}

// one CNN run plus the exact offline optimum, as a sweep row does
fn job(s: &Scenario) -> f64 {
    let opt = offline_optimum(s, None).unwrap();
    run_scenario("bench", s, None, &RunOptions::default(), opt).unwrap().record.cost
}

fn bench_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("cnn-batch");
    group.sample_size(10);
    for n in [8, 12] {
        let scenarios = batch(64, n);
        group.bench_with_input(BenchmarkId::new("sequential", n), &scenarios, |b, s| {
            b.iter(|| seq_map(s, job))
        });
        group.bench_with_input(BenchmarkId::new("par_map", n), &scenarios, |b, s| {
            b.iter(|| par_map(s, job))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_batch);
criterion_main!(benches);
