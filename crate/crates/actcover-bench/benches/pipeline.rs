use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use actcover::generator::{generate, GeneratorSpec};
use actcover::oracle::exact_optimum;
use actcover::reductions::bipartite_double_cover;
use actcover::solver::{solve, SolveConfig};
use actcover_bench::{oracle_instance, sized_instance};

fn solve_sizes(c: &mut Criterion) {
    let cfg = SolveConfig::default();
    let mut group = c.benchmark_group("solve");
    for (n, m) in [(40, 200), (100, 800), (200, 2_000)] {
        let inst = sized_instance(n, m);
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_m{m}")), &inst, |b, inst| {
            b.iter(|| solve(inst, &cfg).unwrap())
        });
    }
    group.finish();
}

fn oracle_desk_scale(c: &mut Criterion) {
    let inst = oracle_instance();
    c.bench_function("oracle_m16", |b| b.iter(|| exact_optimum(&inst, 24).unwrap()));
}

fn reductions(c: &mut Criterion) {
    let inst = sized_instance(200, 2_000);
    c.bench_function("double_cover_m2000", |b| b.iter(|| bipartite_double_cover(&inst)));
}

fn generation(c: &mut Criterion) {
    c.bench_function("generate_m2000", |b| {
        b.iter(|| {
            generate(&GeneratorSpec {
                n: 200,
                m: 2_000,
                k_max: 10,
                theta_target: 100.0,
                cost_scale: 1_000,
                seed: 1,
                bipartite: false,
            })
            .unwrap()
        })
    });
}

criterion_group!(benches, solve_sizes, oracle_desk_scale, reductions, generation);
criterion_main!(benches);
