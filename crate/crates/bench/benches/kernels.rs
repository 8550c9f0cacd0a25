use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cvchan_core::{
    compose, eb_order, is_eb_choi, nu_squared, prp_channel, theta_window, tmsv_covariance,
    GaussianChannel, UnitaryGaussian, DEFAULT_PROBE_RPRIME,
};

fn bench_nu_squared(c: &mut Criterion) {
    let v = tmsv_covariance(1.5).unwrap();
    c.bench_function("nu_squared/tmsv", |b| {
        b.iter(|| nu_squared(black_box(&v)).unwrap())
    });
}

fn bench_symplectic_spectrum(c: &mut Criterion) {
    let v = tmsv_covariance(1.5).unwrap();
    c.bench_function("symplectic_eigenvalues/tmsv", |b| {
        b.iter(|| black_box(&v).symplectic_eigenvalues().unwrap())
    });
}

fn bench_is_eb_choi(c: &mut Criterion) {
    let phi = GaussianChannel::attenuation(0.3, 0.5).unwrap();
    c.bench_function("is_eb_choi/attenuation", |b| {
        b.iter(|| is_eb_choi(black_box(&phi), DEFAULT_PROBE_RPRIME, 1e-10).unwrap())
    });
}

fn bench_compose_chain(c: &mut Criterion) {
    let bs = GaussianChannel::attenuation(0.0, 0.7).unwrap();
    let s = UnitaryGaussian::squeezer(1.0).unwrap();
    c.bench_function("compose/bs-squeezer-bs", |b| {
        b.iter(|| {
            let inner = compose(s.channel(), black_box(&bs)).unwrap();
            compose(&bs, &inner).unwrap()
        })
    });
}

fn bench_eb_order(c: &mut Criterion) {
    let phi = GaussianChannel::attenuation(0.3, 0.5).unwrap();
    c.bench_function("eb_order/order-2-attenuation", |b| {
        b.iter(|| eb_order(black_box(&phi), 5, 1e-10).unwrap())
    });
}

fn bench_theta_window(c: &mut Criterion) {
    c.bench_function("theta_window/closed-form", |b| {
        b.iter(|| theta_window(black_box(0.9), black_box(1.0)).unwrap())
    });
    c.bench_function("prp_channel/triplet", |b| {
        b.iter(|| prp_channel(black_box(1.0), 0.9, 1.0).unwrap())
    });
}

criterion_group!(
    benches,
    bench_nu_squared,
    bench_symplectic_spectrum,
    bench_is_eb_choi,
    bench_compose_chain,
    bench_eb_order,
    bench_theta_window
);
criterion_main!(benches);
