//! Entanglement-breaking certification and amendability analysis for
//! single-mode Gaussian channels.
//!
//! The workhorse test applies `1 ⊗ Φ`-style one-sided action to a two-mode
//! squeezed vacuum probe of finite squeezing and checks the PPT quantity ν²
//! of the output; the verdict does not depend on the probe squeezing, only
//! the margin does. Channels with ν² within tolerance of 1/4 are classified
//! EB (the EB region is closed).

use crate::channel::{compose, GaussianChannel, UnitaryGaussian};
use crate::entanglement::{nu_squared, tmsv_covariance};
use crate::error::{Error, Result};
use crate::symplectic::DEFAULT_TOL;

/// Default probe squeezing for Choi-style EB tests. Any positive value gives
/// the same verdict; larger values separate the two regions more sharply.
pub const DEFAULT_PROBE_RPRIME: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EbMethod {
    /// One-sided action on a finite-squeezing probe, PPT on the output.
    ChoiPpt,
    /// Closed-form noise-splitting criterion for diagonal channels.
    DiagonalAnalytic,
}

/// Outcome of an EB test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EbVerdict {
    pub is_eb: bool,
    /// Certifying ν² of the probe output (Choi-PPT method only).
    pub nu2: Option<f64>,
    /// Probe squeezing used (Choi-PPT method only).
    pub probe_rprime: Option<f64>,
    pub method: EbMethod,
}

/// EB test by one-sided action on a two-mode squeezed vacuum probe:
/// EB iff the output ν² is at least `1/4 - tol`.
pub fn is_eb_choi(phi: &GaussianChannel, probe_rprime: f64, tol: f64) -> Result<EbVerdict> {
    if phi.modes() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: 2 * phi.modes(),
        });
    }
    if !probe_rprime.is_finite() || probe_rprime <= 0.0 {
        return Err(Error::OutOfRange {
            name: "probe_rprime",
            value: probe_rprime,
            domain: "(0, inf)",
        });
    }
    if !phi.is_cpt(DEFAULT_TOL) {
        return Err(Error::NotCpt);
    }
    let probe = tmsv_covariance(probe_rprime)?;
    let out = phi.one_sided()?.apply_cov(&probe)?;
    let nu2 = nu_squared(&out)?;
    Ok(EbVerdict {
        is_eb: nu2 >= 0.25 - tol,
        nu2: Some(nu2),
        probe_rprime: Some(probe_rprime),
        method: EbMethod::ChoiPpt,
    })
}

/// Analytic EB test for single-mode channels with diagonal `K` and `β`:
/// EB iff `sqrt(β₁₁ β₂₂) ≥ (1 + |det K|) / 2`.
///
/// This is the optimal split of the noise decomposition `β = α + ν` with
/// `α ⪰ (i/2)Δ` and `ν ⪰ (i/2)KᵀΔK` when everything is diagonal; it is
/// cross-validated against [`is_eb_choi`] and against a brute-force
/// feasibility sweep in the test suite, and is never the sole certifier in
/// user-facing output.
pub fn is_eb_diagonal(phi: &GaussianChannel) -> Result<EbVerdict> {
    if phi.modes() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: 2 * phi.modes(),
        });
    }
    let off = phi.k().get(0, 1).abs().max(phi.k().get(1, 0).abs());
    let off_beta = phi.beta().get(0, 1).abs().max(phi.beta().get(1, 0).abs());
    let scale = phi.k().max_abs().max(phi.beta().max_abs()).max(1.0);
    if off > 1e-12 * scale || off_beta > 1e-12 * scale {
        return Err(Error::NotDiagonal);
    }
    if !phi.is_cpt(DEFAULT_TOL) {
        return Err(Error::NotCpt);
    }
    let noise_scale = (phi.beta().get(0, 0) * phi.beta().get(1, 1)).max(0.0).sqrt();
    let needed = 0.5 * (1.0 + phi.k().det().abs());
    Ok(EbVerdict {
        is_eb: noise_scale >= needed,
        nu2: None,
        probe_rprime: None,
        method: EbMethod::DiagonalAnalytic,
    })
}

/// Smallest `n <= n_max` such that the n-fold composition `Φⁿ` is EB, or
/// `None`. Powers are built by exact triplet composition, not by round trips
/// through probe states.
pub fn eb_order(phi: &GaussianChannel, n_max: usize, tol: f64) -> Result<Option<usize>> {
    if n_max < 1 {
        return Err(Error::OutOfRange {
            name: "n_max",
            value: n_max as f64,
            domain: "[1, inf)",
        });
    }
    let mut power = phi.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = compose(phi, &power)?;
        }
        if is_eb_choi(&power, DEFAULT_PROBE_RPRIME, tol)?.is_eb {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Noise threshold for the attenuation channel to be EB of order `n`:
/// `N0 ≥ ηⁿ / Σ_{j=0}^{n-1} ηʲ`.
pub fn attenuation_boundary(eta: f64, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            domain: "[1, inf)",
        });
    }
    if !eta.is_finite() || !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            domain: "[0, 1]",
        });
    }
    if eta == 0.0 {
        return Ok(0.0);
    }
    if eta == 1.0 {
        return Ok(1.0 / n as f64);
    }
    let geometric_sum = (1.0 - eta.powi(n as i32)) / (1.0 - eta);
    Ok(eta.powi(n as i32) / geometric_sum)
}

/// EB threshold in transmissivity for the beam splitter / squeezer / beam
/// splitter composition at fixed squeezing `r`: the composition is EB iff
/// `η ≤ η̃(r)`, with
/// `η̃(r) = (cosh 2r - sqrt(2 cosh 2r - 1)) / (2 sinh² r)`.
pub fn eta_tilde(r: f64) -> Result<f64> {
    if !r.is_finite() {
        return Err(Error::NonFinite { name: "r" });
    }
    if r <= 0.0 {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            domain: "(0, inf)",
        });
    }
    let c2 = (2.0 * r).cosh();
    let sh = r.sinh();
    Ok(0.5 * (c2 - (2.0 * c2 - 1.0).sqrt()) / (sh * sh))
}

/// Inverse threshold of [`eta_tilde`]: at fixed transmissivity `η ∈ (0, 1)`
/// the composition is EB iff `r ≥ r̃(η) = (1/2)·arccosh((η² + 1)/(η - 1)²)`.
/// Diverges as `η → 1`.
pub fn r_tilde(eta: f64) -> Result<f64> {
    if !eta.is_finite() {
        return Err(Error::NonFinite { name: "eta" });
    }
    if eta <= 0.0 || eta >= 1.0 {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            domain: "(0, 1)",
        });
    }
    let x = (eta * eta + 1.0) / ((eta - 1.0) * (eta - 1.0));
    Ok(0.5 * x.acosh())
}

/// Transmissivity below which the product witness stops detecting the
/// double-attenuation output of a probe with squeezing `rprime`:
/// `η̄(r') = tanh(r'/4)`.
pub fn eta_bar(rprime: f64) -> Result<f64> {
    if !rprime.is_finite() {
        return Err(Error::NonFinite { name: "rprime" });
    }
    if rprime < 0.0 {
        return Err(Error::OutOfRange {
            name: "rprime",
            value: rprime,
            domain: "[0, inf)",
        });
    }
    Ok((rprime / 4.0).tanh())
}

/// Closed-form triplet of the asymmetric-noise / phase-shift /
/// asymmetric-noise composition: `K = η·R(θ)ᵀ`, `l = 0`,
/// `β = N_P(η·R(θ)·Π·R(θ)ᵀ + Π) + ((1 - η²)/2)·I`, with `Π = diag(0, 1)`.
///
/// Entrywise equal to composing the three channels through the composition
/// law (tested to 1e-12).
pub fn prp_channel(theta: f64, eta: f64, np: f64) -> Result<GaussianChannel> {
    if !theta.is_finite() {
        return Err(Error::NonFinite { name: "theta" });
    }
    if !eta.is_finite() || !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            domain: "[0, 1]",
        });
    }
    if !np.is_finite() || np < 0.0 {
        return Err(Error::OutOfRange {
            name: "np",
            value: np,
            domain: "[0, inf)",
        });
    }
    let (c, s) = (theta.cos(), theta.sin());
    let k = crate::linalg::Matrix::from_row_slice(2, &[c, -s, s, c]).scaled(eta);
    // R(θ) Π R(θ)ᵀ = [[sin²θ, sinθ cosθ], [sinθ cosθ, cos²θ]].
    let mut beta = crate::linalg::Matrix::from_row_slice(
        2,
        &[
            np * eta * s * s,
            np * eta * s * c,
            np * eta * s * c,
            np * eta * c * c + np,
        ],
    );
    let vac = 0.5 * (1.0 - eta * eta);
    beta.set(0, 0, beta.get(0, 0) + vac);
    beta.set(1, 1, beta.get(1, 1) + vac);
    GaussianChannel::new(k, vec![0.0; 2], beta)
}

/// The window parameter for the phase-shift-filtered composition:
/// `c = (2ηN_P² - 2η² - (η-1)(η+1)²N_P) / (2ηN_P²)`.
pub fn amendability_c(eta: f64, np: f64) -> Result<f64> {
    if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            domain: "(0, 1]",
        });
    }
    if !np.is_finite() || np <= 0.0 {
        return Err(Error::OutOfRange {
            name: "np",
            value: np,
            domain: "(0, inf)",
        });
    }
    let numerator =
        2.0 * eta * np * np - 2.0 * eta * eta - (eta - 1.0) * (eta + 1.0) * (eta + 1.0) * np;
    Ok(numerator / (2.0 * eta * np * np))
}

/// Filter angles for which the phase-shift-filtered composition is EB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaWindow {
    pub theta_min: f64,
    pub theta_max: f64,
    pub c: f64,
}

/// EB window of the filtered composition in the filter angle:
/// `[arccos(√c), arccos(-√c)]`, present iff `0 ≤ c ≤ 1`. An absent window
/// means the composition is EB (or not) for every angle, so the channel is
/// not amendable by a phase shift.
pub fn theta_window(eta: f64, np: f64) -> Result<Option<ThetaWindow>> {
    let c = amendability_c(eta, np)?;
    if !(0.0..=1.0).contains(&c) {
        return Ok(None);
    }
    let theta_min = c.sqrt().acos();
    Ok(Some(ThetaWindow {
        theta_min,
        theta_max: std::f64::consts::PI - theta_min,
        c,
    }))
}

/// Joint verdict for the pair (Φ, U): the filtered double application
/// `Φ ∘ U ∘ Φ` is EB while `Φ²` is not, which makes `U ∘ Φ` an order-2 EB
/// channel amendable by the filter `U†`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmendabilityReport {
    /// `Φ ∘ U ∘ Φ` is EB.
    pub phi_u_phi_eb: bool,
    /// `Φ ∘ Φ` is EB.
    pub phi2_eb: bool,
    /// `phi_u_phi_eb && !phi2_eb`.
    pub amendable: bool,
}

pub fn amendable_check(
    phi: &GaussianChannel,
    filter: &UnitaryGaussian,
    tol: f64,
) -> Result<AmendabilityReport> {
    let filtered = compose(phi, &compose(filter.channel(), phi)?)?;
    let doubled = compose(phi, phi)?;
    let phi_u_phi_eb = is_eb_choi(&filtered, DEFAULT_PROBE_RPRIME, tol)?.is_eb;
    let phi2_eb = is_eb_choi(&doubled, DEFAULT_PROBE_RPRIME, tol)?.is_eb;
    Ok(AmendabilityReport {
        phi_u_phi_eb,
        phi2_eb,
        amendable: phi_u_phi_eb && !phi2_eb,
    })
}

/// Locates the crossing of a monotone boolean predicate on `[lo, hi]` by
/// bisection, to within `tol`.
pub fn bisect_threshold(
    mut predicate: impl FnMut(f64) -> bool,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::OutOfRange {
            name: "bracket",
            value: hi - lo,
            domain: "(0, inf)",
        });
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::OutOfRange {
            name: "tol",
            value: tol,
            domain: "(0, inf)",
        });
    }
    let at_lo = predicate(lo);
    if predicate(hi) == at_lo {
        return Err(Error::BisectionBracket);
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if predicate(mid) == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn pure_attenuation_never_eb() {
        for eta in [0.1, 0.5, 0.9] {
            let phi = GaussianChannel::attenuation(0.0, eta).unwrap();
            let v = is_eb_choi(&phi, DEFAULT_PROBE_RPRIME, 1e-10).unwrap();
            assert!(!v.is_eb, "eta = {eta}");
            assert!(v.nu2.unwrap() < 0.25);
        }
    }

    #[test]
    fn noisy_attenuation_above_threshold_is_eb() {
        let phi = GaussianChannel::attenuation(0.6, 0.5).unwrap();
        assert!(is_eb_choi(&phi, DEFAULT_PROBE_RPRIME, 1e-10).unwrap().is_eb);
    }

    #[test]
    fn measure_and_prepare_is_eb() {
        let phi = GaussianChannel::new(Matrix::zeros(2), vec![0.0; 2], Matrix::identity(2)).unwrap();
        let v = is_eb_choi(&phi, DEFAULT_PROBE_RPRIME, 1e-10).unwrap();
        assert!(v.is_eb);
        assert!(v.nu2.unwrap() >= 0.25);
        assert!(is_eb_diagonal(&phi).unwrap().is_eb);
    }

    #[test]
    fn diagonal_test_attenuation_threshold() {
        // EB iff n0 >= eta.
        for eta in [0.2, 0.5, 0.8] {
            let above = GaussianChannel::attenuation(eta + 1e-6, eta).unwrap();
            let below = GaussianChannel::attenuation(eta - 1e-6, eta).unwrap();
            assert!(is_eb_diagonal(&above).unwrap().is_eb);
            assert!(!is_eb_diagonal(&below).unwrap().is_eb);
        }
    }

    #[test]
    fn identity_channel_not_eb() {
        let id = GaussianChannel::identity(1);
        assert!(!is_eb_diagonal(&id).unwrap().is_eb);
        assert!(!is_eb_choi(&id, 1.0, 1e-10).unwrap().is_eb);
    }

    #[test]
    fn diagonal_test_rejects_off_diagonal_channels() {
        let rot = UnitaryGaussian::phase_shift(0.5).unwrap();
        assert_eq!(is_eb_diagonal(rot.channel()), Err(Error::NotDiagonal));
    }

    #[test]
    fn eb_order_of_attenuation_families() {
        // eta^2/(1+eta) < n0 < eta: order 2.
        let phi = GaussianChannel::attenuation(0.3, 0.5).unwrap();
        assert_eq!(eb_order(&phi, 5, 1e-10).unwrap(), Some(2));
        // n0 >= eta: order 1.
        let phi = GaussianChannel::attenuation(0.55, 0.5).unwrap();
        assert_eq!(eb_order(&phi, 5, 1e-10).unwrap(), Some(1));
        // Noiseless: never EB.
        let phi = GaussianChannel::attenuation(0.0, 0.5).unwrap();
        assert_eq!(eb_order(&phi, 20, 1e-10).unwrap(), None);
    }

    #[test]
    fn attenuation_boundary_values() {
        assert!((attenuation_boundary(0.7, 1).unwrap() - 0.7).abs() < 1e-15);
        assert!((attenuation_boundary(0.5, 2).unwrap() - 0.25 / 1.5).abs() < 1e-15);
        assert_eq!(attenuation_boundary(0.0, 3).unwrap(), 0.0);
        assert!((attenuation_boundary(1.0, 4).unwrap() - 0.25).abs() < 1e-15);
        assert!(attenuation_boundary(1.2, 1).is_err());
    }

    #[test]
    fn eta_tilde_frozen_values() {
        assert!((eta_tilde(1.0).unwrap() - 0.43730).abs() < 1e-5);
        // Approaches 1 from below for large squeezing.
        assert!(eta_tilde(8.0).unwrap() < 1.0);
        assert!(eta_tilde(8.0).unwrap() > 0.999);
        assert!(eta_tilde(0.0).is_err());
    }

    #[test]
    fn r_tilde_frozen_values() {
        assert!((r_tilde(0.5).unwrap() - 1.14622).abs() < 1e-5);
        assert!((r_tilde(0.4).unwrap() - 0.91911).abs() < 1e-5);
        assert!(r_tilde(0.0).is_err());
        assert!(r_tilde(1.0).is_err());
        // Divergence toward full transmissivity.
        assert!(r_tilde(1.0 - 1e-9).unwrap() > 10.0);
    }

    #[test]
    fn thresholds_are_mutual_inverses() {
        for r in [0.5, 1.0, 2.0] {
            let eta = eta_tilde(r).unwrap();
            assert!((r_tilde(eta).unwrap() - r).abs() < 1e-9);
        }
    }

    #[test]
    fn eta_bar_values() {
        assert_eq!(eta_bar(0.0).unwrap(), 0.0);
        assert!((eta_bar(0.8).unwrap() - 0.19738).abs() < 1e-5);
    }

    #[test]
    fn prp_reduces_to_double_beam_splitter_without_noise() {
        let phi = prp_channel(0.0, 0.8, 0.0).unwrap();
        assert!(phi.k().max_abs_diff(&Matrix::identity(2).scaled(0.8)) < 1e-15);
        let expected = Matrix::identity(2).scaled(0.5 * (1.0 - 0.64));
        assert!(phi.beta().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn prp_without_beam_splitters() {
        let phi = prp_channel(0.7, 1.0, 1.5).unwrap();
        let (c, s) = (0.7_f64.cos(), 0.7_f64.sin());
        let expected = Matrix::from_row_slice(
            2,
            &[1.5 * s * s, 1.5 * s * c, 1.5 * s * c, 1.5 * c * c + 1.5],
        );
        assert!(phi.beta().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn prp_matches_explicit_composition() {
        let (theta, eta, np) = (1.0, 0.9, 1.0);
        let closed = prp_channel(theta, eta, np).unwrap();
        let p = GaussianChannel::asym_attenuation(eta, np).unwrap();
        let rot = UnitaryGaussian::phase_shift(theta).unwrap();
        let composed = compose(&p, &compose(rot.channel(), &p).unwrap()).unwrap();
        assert!(closed.k().max_abs_diff(composed.k()) < 1e-12);
        assert!(closed.beta().max_abs_diff(composed.beta()) < 1e-12);
    }

    #[test]
    fn amendability_c_values() {
        assert!((amendability_c(0.9, 1.0).unwrap() - 0.30056).abs() < 1e-5);
        for np in [1.5, 2.0, 4.0] {
            let c = amendability_c(1.0, np).unwrap();
            assert!((c - (1.0 - 1.0 / (np * np))).abs() < 1e-14);
        }
        assert!(amendability_c(0.9, 0.0).is_err());
    }

    #[test]
    fn theta_window_examples() {
        let w = theta_window(0.9, 1.0).unwrap().unwrap();
        assert!((w.theta_min - 0.99).abs() < 0.01);
        assert!((w.theta_max - 2.15).abs() < 0.01);
        assert!((w.theta_min + w.theta_max - std::f64::consts::PI).abs() < 1e-12);

        let w = theta_window(1.0, 2.0).unwrap().unwrap();
        assert!((w.theta_min - 0.75_f64.sqrt().acos()).abs() < 1e-12);

        // c outside [0, 1]: no window.
        assert!(theta_window(1.0, 0.5).unwrap().is_none());
    }

    #[test]
    fn amendable_squeezer_examples() {
        let phi = GaussianChannel::attenuation(0.0, 0.4).unwrap();
        let strong = UnitaryGaussian::squeezer(1.5).unwrap();
        let report = amendable_check(&phi, &strong, 1e-10).unwrap();
        assert!(report.phi_u_phi_eb);
        assert!(!report.phi2_eb);
        assert!(report.amendable);

        let weak = UnitaryGaussian::squeezer(0.5).unwrap();
        let report = amendable_check(&phi, &weak, 1e-10).unwrap();
        assert!(!report.phi_u_phi_eb);
        assert!(!report.amendable);

        let id = UnitaryGaussian::phase_shift(0.0).unwrap();
        let report = amendable_check(&phi, &id, 1e-10).unwrap();
        assert!(!report.phi2_eb);
        assert!(!report.amendable);
    }

    #[test]
    fn bisection_finds_step() {
        let x = bisect_threshold(|x| x < 0.5, 0.0, 1.0, 1e-9).unwrap();
        assert!((x - 0.5).abs() < 1e-8);
        assert_eq!(
            bisect_threshold(|x| x < 2.0, 0.0, 1.0, 1e-9),
            Err(Error::BisectionBracket)
        );
    }
}
