//! Gaussian channels as (K, l, β) triplets.
//!
//! A channel maps covariance matrices as `V → Kᵀ V K + β` and mean vectors as
//! `⟨R⟩ → Kᵀ ⟨R⟩ + l`. Complete positivity requires
//! `β ∓ (i/2)(Δ − Kᵀ Δ K) ⪰ 0`, which every constructor enforces.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_min_eigenvalue, ComplexMatrix, Matrix, STRUCTURE_TOL};
use crate::symplectic::{CovarianceMatrix, GaussianState, SymplecticForm, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    modes: usize,
    k: Matrix,
    l: Vec<f64>,
    beta: Matrix,
}

impl GaussianChannel {
    /// Builds a channel from its triplet, validating dimensions, symmetry of
    /// `β` and complete positivity.
    pub fn new(k: Matrix, l: Vec<f64>, beta: Matrix) -> Result<Self> {
        let dim = k.dim();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: dim,
            });
        }
        if beta.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: beta.dim(),
            });
        }
        if l.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: l.len(),
            });
        }
        if !k.is_finite() || !beta.is_finite() || !l.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { name: "triplet" });
        }
        let defect = beta.symmetry_defect();
        if defect > STRUCTURE_TOL * beta.max_abs().max(1.0) {
            return Err(Error::NotSymmetric { defect });
        }
        let channel = GaussianChannel {
            modes: dim / 2,
            k,
            l,
            beta: beta.symmetrized(),
        };
        if !channel.is_cpt(DEFAULT_TOL) {
            return Err(Error::NotCpt);
        }
        Ok(channel)
    }

    pub fn identity(modes: usize) -> Self {
        GaussianChannel {
            modes,
            k: Matrix::identity(2 * modes),
            l: vec![0.0; 2 * modes],
            beta: Matrix::zeros(2 * modes),
        }
    }

    /// Attenuation channel: beam-splitter coupling of transmissivity `eta`
    /// to a bath adding `n0` noise quanta.
    /// Triplet: `K = √η·I`, `l = 0`, `β = (N0 + (1-η)/2)·I`.
    pub fn attenuation(n0: f64, eta: f64) -> Result<Self> {
        check_range("eta", eta, 0.0, 1.0)?;
        check_nonneg("n0", n0)?;
        GaussianChannel::new(
            Matrix::identity(2).scaled(eta.sqrt()),
            vec![0.0; 2],
            Matrix::identity(2).scaled(n0 + 0.5 * (1.0 - eta)),
        )
    }

    /// Additive noise on the P quadrature only: `K = I`, `β = N_P·diag(0, 1)`.
    /// A random momentum displacement with Gaussian variance `np`; composing
    /// it after a noiseless beam splitter gives [`asym_attenuation`].
    ///
    /// [`asym_attenuation`]: GaussianChannel::asym_attenuation
    pub fn phase_noise(np: f64) -> Result<Self> {
        check_nonneg("np", np)?;
        GaussianChannel::new(
            Matrix::identity(2),
            vec![0.0; 2],
            Matrix::diagonal(&[0.0, np]),
        )
    }

    /// Attenuation whose added noise acts on the P quadrature only:
    /// `K = √η·I`, `β = N_P·diag(0, 1) + ((1-η)/2)·I`.
    pub fn asym_attenuation(eta: f64, np: f64) -> Result<Self> {
        check_range("eta", eta, 0.0, 1.0)?;
        check_nonneg("np", np)?;
        let half = 0.5 * (1.0 - eta);
        GaussianChannel::new(
            Matrix::identity(2).scaled(eta.sqrt()),
            vec![0.0; 2],
            Matrix::diagonal(&[half, np + half]),
        )
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn k(&self) -> &Matrix {
        &self.k
    }

    pub fn l(&self) -> &[f64] {
        &self.l
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    /// Complete-positivity check, evaluated for both signs of the condition.
    /// The two are equivalent by conjugation; checking both is a cheap guard
    /// on the Hermitian assembly.
    pub fn is_cpt(&self, tol: f64) -> bool {
        let delta = SymplecticForm::new(self.modes).expect("modes >= 1");
        let commutator_gap = delta
            .matrix()
            .sub(&self.k.transpose().matmul(delta.matrix()).matmul(&self.k));
        for sign in [-0.5, 0.5] {
            let h = ComplexMatrix::from_parts(&self.beta, &commutator_gap.scaled(sign));
            match hermitian_min_eigenvalue(&h) {
                Ok(min) if min >= -tol => {}
                _ => return false,
            }
        }
        true
    }

    /// Applies the channel to a covariance matrix: `V → Kᵀ V K + β`.
    pub fn apply_cov(&self, v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        if v.modes() != self.modes {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.modes,
                got: v.dim(),
            });
        }
        let out = self
            .k
            .transpose()
            .matmul(v.matrix())
            .matmul(&self.k)
            .add(&self.beta);
        CovarianceMatrix::new(out)
    }

    /// Applies the channel to a full Gaussian state.
    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState> {
        let cov = self.apply_cov(state.cov())?;
        let mut mean = self.k.transpose().mul_vec(state.mean());
        for (m, shift) in mean.iter_mut().zip(&self.l) {
            *m += shift;
        }
        GaussianState::new(mean, cov)
    }

    /// Embeds a single-mode channel as a two-mode channel acting on mode 1,
    /// with the identity on mode 2.
    pub fn one_sided(&self) -> Result<GaussianChannel> {
        if self.modes != 1 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: 2 * self.modes,
            });
        }
        let k = self.k.direct_sum(&Matrix::identity(2));
        let beta = self.beta.direct_sum(&Matrix::zeros(2));
        let l = vec![self.l[0], self.l[1], 0.0, 0.0];
        Ok(GaussianChannel {
            modes: 2,
            k,
            l,
            beta,
        })
    }
}

/// Composition `second ∘ first` (that is, `first` acts on the state first).
///
/// Parameters combine as `K = K₁K₂`, `l = K₂ᵀl₁ + l₂`, `β = K₂ᵀβ₁K₂ + β₂`,
/// which is exactly the order that makes
/// `apply(compose(b, a), s) = apply(b, apply(a, s))`.
pub fn compose(second: &GaussianChannel, first: &GaussianChannel) -> Result<GaussianChannel> {
    if second.modes != first.modes {
        return Err(Error::DimensionMismatch {
            expected: 2 * first.modes,
            got: 2 * second.modes,
        });
    }
    let k2t = second.k.transpose();
    let k = first.k.matmul(&second.k);
    let mut l = k2t.mul_vec(&first.l);
    for (x, add) in l.iter_mut().zip(&second.l) {
        *x += add;
    }
    let beta = k2t.matmul(&first.beta).matmul(&second.k).add(&second.beta);
    GaussianChannel::new(k, l, beta)
}

/// A Gaussian channel with `β = 0` and symplectic `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGaussian {
    inner: GaussianChannel,
}

impl UnitaryGaussian {
    pub fn new(k: Matrix, l: Vec<f64>) -> Result<Self> {
        let dim = k.dim();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: dim,
            });
        }
        let delta = SymplecticForm::new(dim / 2)?;
        let defect = k
            .matmul(delta.matrix())
            .matmul(&k.transpose())
            .max_abs_diff(delta.matrix());
        if defect > STRUCTURE_TOL * k.max_abs().max(1.0) {
            return Err(Error::NotSymplectic { defect });
        }
        Ok(UnitaryGaussian {
            inner: GaussianChannel::new(k, l, Matrix::zeros(dim))?,
        })
    }

    /// Single-mode squeezer: `K = diag(e^r, e^{-r})`.
    pub fn squeezer(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite { name: "r" });
        }
        UnitaryGaussian::new(Matrix::diagonal(&[r.exp(), (-r).exp()]), vec![0.0; 2])
    }

    /// Single-mode phase-space rotation by `theta`: `K = R(θ)ᵀ` with
    /// `R(θ) = [[cos θ, sin θ], [-sin θ, cos θ]]`.
    pub fn phase_shift(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { name: "theta" });
        }
        let (c, s) = (theta.cos(), theta.sin());
        UnitaryGaussian::new(Matrix::from_row_slice(2, &[c, -s, s, c]), vec![0.0; 2])
    }

    pub fn channel(&self) -> &GaussianChannel {
        &self.inner
    }

    /// Inverse transformation: `(K⁻¹, -(K⁻¹)ᵀ l, 0)`. Composing a unitary with
    /// its adjoint in either order gives the identity channel.
    pub fn adjoint(&self) -> Result<UnitaryGaussian> {
        let kinv = self.inner.k.inverse()?;
        let mut l = kinv.transpose().mul_vec(&self.inner.l);
        for x in l.iter_mut() {
            *x = -*x;
        }
        UnitaryGaussian::new(kinv, l)
    }
}

impl From<UnitaryGaussian> for GaussianChannel {
    fn from(u: UnitaryGaussian) -> GaussianChannel {
        u.inner
    }
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite { name });
    }
    if value < lo || value > hi {
        return Err(Error::OutOfRange {
            name,
            value,
            domain: "[0, 1]",
        });
    }
    Ok(())
}

fn check_nonneg(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite { name });
    }
    if value < 0.0 {
        return Err(Error::OutOfRange {
            name,
            value,
            domain: "[0, inf)",
        });
    }
    Ok(())
}
