use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use padic_wavefront::char_sums::{direct_ft, inverse_ft, FrequencyPoint, MonomialScene, PolynomialScene};
use padic_wavefront::poly::MultiPoly;
use padic_wavefront::rational::int;
use padic_wavefront::verify::homogeneity_suite;
use padic_wavefront::{ExecMode, PAdicScalar, PrimeContext, ResidueCube};

const MODES: [ExecMode; 2] = [ExecMode::Sequential, ExecMode::Parallel];

fn direct(c: &mut Criterion) {
    // y1^3 + y1 y2^2 - 2 y2 on Z_5^2 at conductor 5^4: 390625 residue points
    let y1 = MultiPoly::var(2, 0);
    let y2 = MultiPoly::var(2, 1);
    let phi = y1.pow(3).add(&y1.mul(&y2.pow(2))).sub(&y2.scale(&int(2)));
    let scene = PolynomialScene::new(2, vec![phi], vec![1, 0], None).unwrap();
    let mut group = c.benchmark_group("direct_ft");
    for mode in MODES {
        let ctx = PrimeContext::new(5, 8).unwrap().with_exec(mode);
        let freq = FrequencyPoint::scalar(PAdicScalar::from_parts(&ctx, 3, 4));
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &ctx, |b, ctx| {
            b.iter(|| direct_ft(ctx, &scene, &ResidueCube::full(2), black_box(&freq)).unwrap())
        });
    }
    group.finish();
}

fn inverse(c: &mut Criterion) {
    let scene = MonomialScene::new(vec![2, 1], vec![0, 1]).unwrap();
    let mut group = c.benchmark_group("inverse_ft");
    for mode in MODES {
        let ctx = PrimeContext::new(3, 12).unwrap().with_exec(mode);
        let xi = PAdicScalar::from_parts(&ctx, 2, 5);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &ctx, |b, ctx| {
            b.iter(|| inverse_ft(ctx, &scene, &ResidueCube::full(2), black_box(&xi)).unwrap())
        });
    }
    group.finish();
}

fn homogeneity(c: &mut Criterion) {
    let scene = MonomialScene::new(vec![1, 1], vec![0, 1]).unwrap();
    let mut group = c.benchmark_group("homogeneity_suite");
    group.sample_size(10);
    for mode in MODES {
        let ctx = PrimeContext::new(5, 10).unwrap().with_exec(mode);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &ctx, |b, ctx| {
            b.iter(|| homogeneity_suite(ctx, &scene, 40, black_box(7), false).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, direct, inverse, homogeneity);
criterion_main!(benches);
