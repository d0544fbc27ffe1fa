use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dtspace_bench::{mixture_pair, poly1};
use dtspace_core::potential::{dirichlet_via_potential, u_mu};
use dtspace_core::space1d::dirichlet1;
use dtspace_core::{c64, QuadratureGrid};

fn bench_quadrature(c: &mut Criterion) {
    let (spec, _) = mixture_pair();
    let g = poly1();
    let grid = QuadratureGrid::default();

    c.bench_function("u_mu mixture", |b| {
        b.iter(|| u_mu(&spec, black_box(c64(0.31, -0.42))))
    });
    c.bench_function("dirichlet1 moments", |b| {
        b.iter(|| dirichlet1(&spec, black_box(&g)))
    });

    let mut group = c.benchmark_group("dirichlet_via_potential");
    group.sample_size(10);
    group.bench_function("default grid", |b| {
        b.iter(|| dirichlet_via_potential(&spec, black_box(&g), &grid))
    });
    group.finish();
}

criterion_group!(benches, bench_quadrature);
criterion_main!(benches);
