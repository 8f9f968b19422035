use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rectlab::generators::{census_bijective, oracle, whirl};
use rectlab::perm::generate_separable;

fn generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("generation");
    g.sample_size(10);
    g.bench_function("oracle n=7", |b| b.iter(|| oracle::all_rectangulations(black_box(7)).unwrap().len()));
    g.bench_function("separable n=10", |b| b.iter(|| generate_separable(black_box(10)).len()));
    g.bench_function("bijective census n=8", |b| b.iter(|| census_bijective(black_box(8)).unwrap().len()));
    g.bench_function("whirl tree depth 9", |b| b.iter(|| whirl::level_sizes(black_box(9))));
    g.finish();
}

criterion_group!(benches, generation);
criterion_main!(benches);
