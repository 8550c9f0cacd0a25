//! Shared builders for randomized covariance matrices and channels.
#![allow(dead_code)]
//!
//! Valid covariance matrices are produced in Williamson form `Sᵀ D S` with a
//! symplectic `S` assembled from local rotations, local squeezers and a
//! beam-splitter mixer, so validity holds by construction for any symplectic
//! spectrum at or above the vacuum floor.

use cvchan_core::{CovarianceMatrix, GaussianChannel, Matrix};
use rand::rngs::StdRng;
use rand::Rng;

pub fn assert_close(a: f64, b: f64, tol: f64, context: &str) {
    assert!(
        (a - b).abs() <= tol,
        "{context}: {a} vs {b} (diff {:.3e}, tol {tol:.1e})",
        (a - b).abs()
    );
}

pub fn rotation2(theta: f64) -> Matrix {
    let (c, s) = (theta.cos(), theta.sin());
    Matrix::from_row_slice(2, &[c, s, -s, c])
}

pub fn squeeze2(r: f64) -> Matrix {
    Matrix::diagonal(&[r.exp(), (-r).exp()])
}

/// Generic 2x2 symplectic (determinant one): rotation · squeezer · rotation.
pub fn local_symplectic(r: f64, phi: f64, psi: f64) -> Matrix {
    rotation2(phi).matmul(&squeeze2(r)).matmul(&rotation2(psi))
}

/// Mode-mixing 4x4 symplectic with equal action on both quadratures.
pub fn beam_splitter_mix(theta: f64) -> Matrix {
    let (c, s) = (theta.cos(), theta.sin());
    let mut m = Matrix::zeros(4);
    m.set_block(0, 0, &Matrix::identity(2).scaled(c));
    m.set_block(0, 2, &Matrix::identity(2).scaled(s));
    m.set_block(2, 0, &Matrix::identity(2).scaled(-s));
    m.set_block(2, 2, &Matrix::identity(2).scaled(c));
    m
}

pub fn one_mode_cov(nu: f64, r: f64, theta: f64) -> CovarianceMatrix {
    let s = rotation2(theta).matmul(&squeeze2(r));
    CovarianceMatrix::new(s.transpose().matmul(&s).scaled(nu)).unwrap()
}

#[allow(clippy::too_many_arguments)]
pub fn two_mode_cov(
    nu1: f64,
    nu2: f64,
    r1: f64,
    t1: f64,
    r2: f64,
    t2: f64,
    mix: f64,
    t3: f64,
    t4: f64,
) -> CovarianceMatrix {
    let locals_in = local_symplectic(r1, t1, 0.0).direct_sum(&local_symplectic(r2, t2, 0.0));
    let locals_out = rotation2(t3).direct_sum(&rotation2(t4));
    let s = locals_in.matmul(&beam_splitter_mix(mix)).matmul(&locals_out);
    let d = Matrix::diagonal(&[nu1, nu1, nu2, nu2]);
    CovarianceMatrix::new(s.transpose().matmul(&d).matmul(&s)).unwrap()
}

pub fn random_one_mode_cov(rng: &mut StdRng) -> CovarianceMatrix {
    one_mode_cov(
        rng.random_range(0.5..2.5),
        rng.random_range(-1.2..1.2),
        rng.random_range(0.0..std::f64::consts::TAU),
    )
}

pub fn random_two_mode_cov(rng: &mut StdRng) -> CovarianceMatrix {
    two_mode_cov(
        rng.random_range(0.5..2.5),
        rng.random_range(0.5..2.5),
        rng.random_range(-1.0..1.0),
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(-1.0..1.0),
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(0.0..std::f64::consts::TAU),
    )
}

/// Product of two independent single-mode states: separable by construction.
pub fn random_separable_cov(rng: &mut StdRng) -> CovarianceMatrix {
    let a = random_one_mode_cov(rng);
    let b = random_one_mode_cov(rng);
    CovarianceMatrix::new(a.matrix().direct_sum(b.matrix())).unwrap()
}

/// Random single-mode CPT channel: arbitrary K, then enough isotropic noise
/// added on top of a random positive matrix to satisfy complete positivity
/// with a strictly positive margin.
pub fn random_cpt_channel(rng: &mut StdRng) -> GaussianChannel {
    let k = Matrix::from_row_slice(
        2,
        &[
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
        ],
    );
    let g = Matrix::from_row_slice(
        2,
        &[
            rng.random_range(-0.7..0.7),
            rng.random_range(-0.7..0.7),
            rng.random_range(-0.7..0.7),
            rng.random_range(-0.7..0.7),
        ],
    );
    let base = g.matmul(&g.transpose());
    // beta >= (i/2)(Δ - KᵀΔK) needs at least |1 - det K| / 2 of isotropic
    // noise for a 2x2 K; add a random strictly positive margin.
    let needed = 0.5 * (1.0 - k.det()).abs();
    let margin = rng.random_range(0.01..1.5);
    let beta = base.add(&Matrix::identity(2).scaled(needed + margin));
    GaussianChannel::new(k, vec![0.0; 2], beta).expect("constructed CPT")
}

/// Random diagonal single-mode CPT channel with a mix of EB and non-EB draws.
pub fn random_diagonal_cpt_channel(rng: &mut StdRng) -> GaussianChannel {
    let k1: f64 = rng.random_range(-2.0..2.0);
    let k2: f64 = rng.random_range(-2.0..2.0);
    let c = 0.5 * (1.0 - k1 * k2).abs();
    let b1 = c + rng.random_range(0.0..2.0);
    let b2 = c + rng.random_range(0.0..2.0);
    GaussianChannel::new(
        Matrix::diagonal(&[k1, k2]),
        vec![0.0; 2],
        Matrix::diagonal(&[b1, b2]),
    )
    .expect("constructed CPT")
}
