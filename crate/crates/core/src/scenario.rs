//! Output states of the two filtered-channel setups, ready for sweeps.
//!
//! Both setups send one mode of a two-mode squeezed vacuum probe through a
//! composite single-mode channel and look at the entanglement surviving at
//! the output:
//!
//! - the squeezer setup: beam splitter ∘ squeezer ∘ beam splitter, with the
//!   double beam splitter (`r = 0`) as its reference configuration;
//! - the phase-shift setup: asymmetric-noise channel ∘ phase shift ∘
//!   asymmetric-noise channel, measured after undoing the rotation.
//!
//! The two common optical phase conventions for the beam-splitter network
//! disagree on the sign of the cross-mode correlation block of the output;
//! the sign is a local (π-rotation) degree of freedom that leaves ν²
//! untouched and only swaps which witness quadrature combination detects.
//! The builders take it as an explicit parameter.

use crate::channel::{compose, GaussianChannel, UnitaryGaussian};
use crate::entanglement::tmsv_covariance;
use crate::error::Result;
use crate::symplectic::CovarianceMatrix;

/// Sign convention for the cross-mode correlation block of a setup output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationSign {
    /// Keep the correlations produced by direct triplet propagation.
    Positive,
    /// Flip the correlation block; with this choice the detecting witness is
    /// the `(Q₁+Q₂, P₁-P₂)` combination.
    Negative,
}

/// Negates the off-diagonal (cross-mode) blocks of a two-mode covariance
/// matrix. Equivalent to a π rotation of mode 2, hence entanglement-neutral.
pub fn flip_correlation(v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    let mut m = v.matrix().clone();
    for i in 0..2 {
        for j in 2..4 {
            m.set(i, j, -m.get(i, j));
            m.set(j, i, -m.get(j, i));
        }
    }
    CovarianceMatrix::new(m)
}

/// The composite channel beam splitter ∘ squeezer ∘ beam splitter, both beam
/// splitters of transmissivity `eta`, squeezer strength `r` (`r = 0` removes
/// the squeezer).
pub fn setup_channel(eta: f64, r: f64) -> Result<GaussianChannel> {
    let bs = GaussianChannel::attenuation(0.0, eta)?;
    let squeezer = UnitaryGaussian::squeezer(r)?;
    compose(&bs, &compose(squeezer.channel(), &bs)?)
}

/// Probe output of the squeezer setup: one-sided action of
/// [`setup_channel`] on a two-mode squeezed vacuum with squeezing `rprime`.
pub fn setup_output(
    eta: f64,
    r: f64,
    rprime: f64,
    corr: CorrelationSign,
) -> Result<CovarianceMatrix> {
    let out = setup_channel(eta, r)?
        .one_sided()?
        .apply_cov(&tmsv_covariance(rprime)?)?;
    match corr {
        CorrelationSign::Positive => Ok(out),
        CorrelationSign::Negative => flip_correlation(&out),
    }
}

/// Probe output of the phase-shift setup, without the final rotation
/// correction.
pub fn prp_output(theta: f64, eta: f64, np: f64, rprime: f64) -> Result<CovarianceMatrix> {
    crate::eb::prp_channel(theta, eta, np)?
        .one_sided()?
        .apply_cov(&tmsv_covariance(rprime)?)
}

/// Probe output of the phase-shift setup after the compensating rotation of
/// the channel mode. The correction is a local unitary, so ν² is unchanged;
/// it only realigns the quadratures for the product witness.
pub fn prp_output_corrected(
    theta: f64,
    eta: f64,
    np: f64,
    rprime: f64,
) -> Result<CovarianceMatrix> {
    prp_output(theta, eta, np, rprime)?.rotate_mode(1, -theta)
}

/// Closed forms for the diagonal entries of the squeezer-setup output's
/// channel-mode block, used as a propagation cross-check:
/// `α(η, r, r') = (e^{2r}·η·(η cosh r' - η + 1) - η + 1) / 2`.
pub fn setup_alpha(eta: f64, r: f64, rprime: f64) -> f64 {
    0.5 * ((2.0 * r).exp() * eta * (eta * rprime.cosh() - eta + 1.0) - eta + 1.0)
}
