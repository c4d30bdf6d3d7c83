use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use reeb_bench::{random_field, rng, surfaces};
use reeb_core::realize::{check_realization, realize, DecoratedGraph, RealizeOptions};
use reeb_core::{compute_reeb_graph, sampled_reeb_oracle, Multigraph};

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_reeb_graph");
    for (name, mesh) in surfaces() {
        let field = random_field(&mesh, &mut rng(3));
        group.bench_with_input(BenchmarkId::from_parameter(name), &field, |b, f| {
            b.iter(|| compute_reeb_graph(black_box(&mesh), black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let (_, mesh) = surfaces().swap_remove(2);
    let field = random_field(&mesh, &mut rng(4));
    let mut group = c.benchmark_group("sampled_reeb_oracle");
    for k in [1, 2, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| sampled_reeb_oracle(&mesh, &field, k).unwrap())
        });
    }
    group.finish();
}

fn realization(c: &mut Criterion) {
    let theta = DecoratedGraph::planar(&Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]));
    let k4 = DecoratedGraph::planar(&Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]));
    let options = RealizeOptions::default();
    for (name, dg) in [("theta", &theta), ("k4", &k4)] {
        c.bench_function(&format!("realize/{name}"), |b| b.iter(|| realize(black_box(dg), &options).unwrap()));
        let out = realize(dg, &options).unwrap();
        c.bench_function(&format!("verify/{name}"), |b| b.iter(|| check_realization(dg, &out).unwrap()));
    }
}

criterion_group!(benches, sweep, oracle, realization);
criterion_main!(benches);
