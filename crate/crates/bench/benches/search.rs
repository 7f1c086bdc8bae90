use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use nk_muddle::{
    brute_force_optimum, build_cluster_partition, centralized_search, muddling_through,
    parallel_update, steepest_ascent, AcceptanceScope, Landscape, MaxChanges, MtParams,
    PartitionMode, PuParams, SearchBudget,
};
use nk_muddle_bench::{landscape, rng, start};
use std::hint::black_box;

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("landscape_build");
    for k in [0, 4, 15] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| landscape(20, black_box(k)))
        });
    }
    g.finish();
}

fn evaluate(c: &mut Criterion) {
    let l = landscape(20, 15);
    let x = start(20);
    let profile = l.contribution_profile(&x).unwrap();
    c.bench_function("total_fitness/n20k15", |b| {
        b.iter(|| l.total_fitness(black_box(&x)).unwrap())
    });
    c.bench_function("delta_fitness/n20k15", |b| {
        b.iter(|| l.delta_fitness(black_box(&x), &profile, 7).unwrap())
    });
}

fn searches(c: &mut Criterion) {
    let budget = SearchBudget::new(1000).unwrap();
    let x = start(20);
    let mut g = c.benchmark_group("search/n20");
    for k in [2, 15] {
        let l: Landscape = landscape(20, k);
        g.bench_function(BenchmarkId::new("sa", k), |b| {
            b.iter(|| steepest_ascent(&l, &x, budget).unwrap())
        });
        g.bench_function(BenchmarkId::new("cs", k), |b| {
            b.iter_batched(
                || rng(3),
                |mut r| centralized_search(&l, &x, budget, &mut r).unwrap(),
                BatchSize::SmallInput,
            )
        });
        let pu = PuParams::new(0.5).unwrap();
        g.bench_function(BenchmarkId::new("pu", k), |b| {
            b.iter_batched(
                || rng(3),
                |mut r| parallel_update(&l, &x, budget, pu, &mut r).unwrap(),
                BatchSize::SmallInput,
            )
        });
        for (name, changes) in [("mt:4:1", MaxChanges::One), ("mt:4:2", MaxChanges::Two)] {
            let partition =
                build_cluster_partition(20, 4, PartitionMode::Contiguous, &mut rng(0)).unwrap();
            let params =
                MtParams::new(partition, changes, AcceptanceScope::ComembersExcludingFocal)
                    .unwrap();
            g.bench_function(BenchmarkId::new(name, k), |b| {
                b.iter_batched(
                    || rng(3),
                    |mut r| muddling_through(&l, &x, budget, &params, &mut r).unwrap(),
                    BatchSize::SmallInput,
                )
            });
        }
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let l = landscape(16, 4);
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("n16k4", |b| b.iter(|| brute_force_optimum(&l).unwrap()));
    g.finish();
}

criterion_group!(benches, build, evaluate, searches, oracle);
criterion_main!(benches);
