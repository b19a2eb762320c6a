use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use reclab_core::{
    build_witness, find_ap, frac_npow, gen_sk, weyl_sum, AlphaSpec, DenseSet, Elements, Precision,
    Rational,
};

fn bench_frac_npow(c: &mut Criterion) {
    let mut group = c.benchmark_group("frac_npow");
    for bits in [128u32, 512, 2048] {
        let a = AlphaSpec::sqrt2().realize(Precision::new(bits).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(bits), &a, |b, a| {
            b.iter(|| frac_npow(black_box(987_654), 3, a).unwrap())
        });
    }
    group.finish();
}

fn bench_gen_sk(c: &mut Criterion) {
    let mut group = c.benchmark_group("gen_sk");
    group.sample_size(10);
    for n in [10_000u64, 100_000] {
        let prec = Precision::for_run(2, n, None).unwrap();
        group.throughput(Throughput::Elements(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| gen_sk(2, &AlphaSpec::sqrt2(), n, prec).unwrap())
        });
    }
    group.finish();
}

fn bench_find_ap(c: &mut Criterion) {
    let n = 20_000;
    let prec = Precision::for_run(2, n, None).unwrap();
    let diffs = gen_sk(2, &AlphaSpec::sqrt2(), n, prec).unwrap().elements().to_vec();
    let witness = build_witness(2, &AlphaSpec::sqrt2(), Rational::new(1, 32), n, prec).unwrap();
    let random = DenseSet::random(n, 0.5, 0);
    let mut group = c.benchmark_group("find_ap");
    group.sample_size(10);
    group.bench_function("witness_exhaustive", |b| {
        b.iter(|| find_ap(black_box(&witness), &diffs, 2))
    });
    group.bench_function("random_half", |b| b.iter(|| find_ap(black_box(&random), &diffs, 2)));
    group.finish();
}

fn bench_weyl_sum(c: &mut Criterion) {
    let n = 100_000;
    let prec = Precision::for_run(2, n, None).unwrap();
    let mut group = c.benchmark_group("weyl_sum");
    group.sample_size(10);
    group.throughput(Throughput::Elements(n));
    group.bench_function("integers_k2", |b| {
        b.iter(|| {
            weyl_sum(Elements::Range { start: 1, len: n }, 2, &AlphaSpec::sqrt3(), n, prec).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_frac_npow, bench_gen_sk, bench_find_ap, bench_weyl_sum);
criterion_main!(benches);
