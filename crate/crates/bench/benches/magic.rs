use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use freudenthal::arith::ri;
use freudenthal::composition::AlgebraTag;
use freudenthal::lie::jacobi_sampled;
use freudenthal::magic::build_magic_algebra;
use freudenthal::roots::builtin_datum;
use freudenthal::series::crosscheck::{run, Suite};
use freudenthal::series::{evaluate_series, SeriesDescriptor};
use magic_bench::adjoint_power;

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("magic_build");
    g.sample_size(10);
    for (a, b) in [(AlgebraTag::H, AlgebraTag::H), (AlgebraTag::C, AlgebraTag::O), (AlgebraTag::O, AlgebraTag::O)] {
        g.bench_function(BenchmarkId::from_parameter(format!("{a}{b}")), |bench| bench.iter(|| build_magic_algebra(black_box(a), b)));
    }
    g.finish();
}

fn jacobi(c: &mut Criterion) {
    let table = build_magic_algebra(AlgebraTag::O, AlgebraTag::O).table.integer_table();
    c.bench_function("jacobi_e8_10k", |b| b.iter(|| jacobi_sampled(&table, 10_000, black_box(7))));
}

fn weyl(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_dim");
    for name in ["f4", "e7", "e8"] {
        let d = builtin_datum(name).unwrap();
        let w = adjoint_power(&d, 4);
        g.bench_function(name, |b| b.iter(|| d.weyl_dim(black_box(&w)).unwrap()));
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let d = SeriesDescriptor::exceptional();
    c.bench_function("exceptional_series_e8", |b| b.iter(|| evaluate_series(&d, black_box(&[2, 1, 1, 1]), &ri(8)).unwrap()));
    let mut g = c.benchmark_group("crosscheck");
    g.sample_size(10);
    g.bench_function("quick", |b| b.iter(|| run(Suite::Quick, false)));
    g.finish();
}

criterion_group!(benches, construction, jacobi, weyl, series);
criterion_main!(benches);
