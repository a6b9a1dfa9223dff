use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use esqpt::classical_limit::hamiltonian;
use esqpt::ibm_quantum::diagonalize;
use esqpt::level_density::{mc_density_with, DensityOptions};
use esqpt::stationary_analysis::find_stationary_points;
use esqpt::ModelParams;

fn params() -> ModelParams {
    ModelParams::new(1.7, 1.45).unwrap()
}

fn classical_energy(c: &mut Criterion) {
    let p = params();
    c.bench_function("hamiltonian", |b| {
        b.iter(|| hamiltonian(&p, black_box([0.3, -0.2, 0.4, 0.1])))
    });
}

fn density(c: &mut Criterion) {
    let p = params();
    let opts = DensityOptions::default();
    c.bench_function("mc_density 1e5 samples", |b| {
        b.iter(|| mc_density_with(&p, 100_000, black_box(1), &opts).unwrap())
    });
}

fn census(c: &mut Criterion) {
    let p = params();
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("stationary census", |b| b.iter(|| find_stationary_points(&p).unwrap()));
    g.bench_function("diagonalize N=50", |b| b.iter(|| diagonalize(&p, black_box(50)).unwrap()));
    g.finish();
}

criterion_group!(benches, classical_energy, density, census);
criterion_main!(benches);
