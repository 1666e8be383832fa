//! Measurements of the inner loops every long-running computation sits on:
//! the lattice partial sums, the K-Bessel quadrature, the two-variable
//! radial kernel, and the invariant ratio built from weighted series.

use std::hint::black_box;

use chyp::modular::j_invariant;
use chyp::series::kernel::eval_kernel;
use chyp::series::eisenstein_partial;
use chyp::specfun::{bessel_k, gauss_2f1};
use chyp::{QuadratureSpec, RadialKernel, SeriesSpec, SiegelPoint, SpectralParam, Truncation};
use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use num_rational::Rational64;

fn generic_point() -> SiegelPoint {
    SiegelPoint::from_chart(vec![Complex64::new(0.2, 0.1)], 0.3, 1.1).unwrap()
}

fn bench_eisenstein_partial(c: &mut Criterion) {
    let z = generic_point();
    let s = Complex64::new(2.3, 0.4);
    let tr = Truncation::new(30).unwrap();
    c.bench_function("eisenstein_partial_box30", |b| {
        b.iter(|| eisenstein_partial(black_box(&z), black_box(s), 0, &tr).unwrap())
    });
}

fn bench_bessel_k(c: &mut Criterion) {
    let quad = QuadratureSpec::default();
    let order = Complex64::new(1.7, 0.3);
    let arg = Complex64::new(2.5, 0.0);
    c.bench_function("bessel_k", |b| {
        b.iter(|| bessel_k(black_box(order), black_box(arg), &quad).unwrap())
    });
}

fn bench_gauss_2f1(c: &mut Criterion) {
    let series = SeriesSpec::default();
    let s = Complex64::new(2.5, 0.0);
    c.bench_function("gauss_2f1_kernel_profile", |b| {
        b.iter(|| {
            gauss_2f1(
                black_box(s),
                black_box(s),
                2.0 * s - 1.0,
                Complex64::new(-1.0 / 0.8, 0.0),
                &series,
            )
            .unwrap()
        })
    });
}

fn bench_two_variable_kernel(c: &mut Criterion) {
    let s = Complex64::new(2.5, 0.0);
    let split = SpectralParam::new(s).default_split(1);
    c.bench_function("two_variable_kernel", |b| {
        b.iter(|| {
            eval_kernel(
                RadialKernel::TwoVariable,
                1,
                s,
                split,
                black_box(0.8),
                black_box(1.2),
            )
            .unwrap()
        })
    });
}

fn bench_j_invariant(c: &mut Criterion) {
    let z = generic_point();
    let m = Rational64::new(1, 1);
    let tr = Truncation::new(60).unwrap();
    c.bench_function("j_invariant_box60", |b| {
        b.iter(|| j_invariant(black_box(&z), m, &tr).unwrap())
    });
}

criterion_group!(
    benches,
    bench_eisenstein_partial,
    bench_bessel_k,
    bench_gauss_2f1,
    bench_two_variable_kernel,
    bench_j_invariant
);
criterion_main!(benches);
