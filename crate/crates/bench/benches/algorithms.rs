use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use domtsp::dominate::{domination_exact, domination_mc};
use domtsp::extend::algorithm_a;
use domtsp::matching::max_matching;
use domtsp::sparse::algorithm_c_structural;
use domtsp_bench::{bernoulli_family, clique_family, SIZES};

fn matching(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_matching");
    for n in SIZES {
        let inst = &bernoulli_family(n, 1)[0];
        let g = inst.zero_graph();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| max_matching(g)));
    }
    group.finish();
}

fn algorithm_a_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("algorithm_a");
    group.sample_size(10);
    for n in SIZES {
        let inst = &bernoulli_family(n, 1)[0];
        group.bench_with_input(BenchmarkId::from_parameter(n), inst, |b, inst| {
            b.iter(|| algorithm_a(inst).unwrap())
        });
    }
    group.finish();
}

fn algorithm_c_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("algorithm_c");
    group.sample_size(10);
    for n in SIZES {
        let inst = &clique_family(n, &[4])[0];
        group.bench_with_input(BenchmarkId::from_parameter(n), inst, |b, inst| {
            b.iter(|| algorithm_c_structural(inst).unwrap())
        });
    }
    group.finish();
}

fn estimation(c: &mut Criterion) {
    let inst = &bernoulli_family(10, 1)[0];
    let tour = algorithm_a(inst).unwrap();
    c.bench_function("domination_exact_n10", |b| b.iter(|| domination_exact(inst, &tour).unwrap()));
    c.bench_function("domination_mc_n10_10k", |b| {
        b.iter(|| domination_mc(inst, &tour, 10_000, 1, 1).unwrap())
    });
}

criterion_group!(benches, matching, algorithm_a_scaling, algorithm_c_scaling, estimation);
criterion_main!(benches);
