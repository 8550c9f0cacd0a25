//! Two-mode probe states and entanglement tests on covariance matrices.
//!
//! Two criteria are provided: the PPT-based quantity ν² (necessary and
//! sufficient for two-mode Gaussian states, entangled iff ν² < 1/4) and the
//! measurable product witness `W = ⟨Q²⟩⟨P²⟩` on joint quadratures (sufficient
//! only: `W < 1/4` implies entanglement).

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::symplectic::CovarianceMatrix;

/// Two-mode squeezed vacuum covariance matrix,
/// `(1/2)·[[cosh r'·I, sinh r'·σz], [sinh r'·σz, cosh r'·I]]`.
///
/// A pure state: both symplectic eigenvalues are 1/2 for every `rprime`.
pub fn tmsv_covariance(rprime: f64) -> Result<CovarianceMatrix> {
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
    let c = 0.5 * rprime.cosh();
    let s = 0.5 * rprime.sinh();
    CovarianceMatrix::new(Matrix::from_row_slice(
        4,
        &[
            c, 0.0, s, 0.0, //
            0.0, c, 0.0, -s, //
            s, 0.0, c, 0.0, //
            0.0, -s, 0.0, c,
        ],
    ))
}

/// 2x2 blocks of a two-mode covariance matrix `[[A, C], [Cᵀ, B]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeBlocks {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

impl TwoModeBlocks {
    /// Reassembles the full covariance matrix; exact round trip.
    pub fn assemble(&self) -> Result<CovarianceMatrix> {
        let mut m = Matrix::zeros(4);
        m.set_block(0, 0, &self.a);
        m.set_block(0, 2, &self.c);
        m.set_block(2, 0, &self.c.transpose());
        m.set_block(2, 2, &self.b);
        CovarianceMatrix::new(m)
    }
}

pub fn block_decompose(v: &CovarianceMatrix) -> Result<TwoModeBlocks> {
    if v.modes() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: v.dim(),
        });
    }
    Ok(TwoModeBlocks {
        a: v.matrix().block(0, 0, 2),
        b: v.matrix().block(2, 2, 2),
        c: v.matrix().block(0, 2, 2),
    })
}

/// Squared minimum symplectic eigenvalue of the partially transposed state,
/// from the local-symplectic invariants:
/// `ν² = (Σ̃ - sqrt(Σ̃² - 4 det V)) / 2` with `Σ̃ = det A + det B - 2 det C`.
///
/// Evaluated in rationalized form `2 det V / (Σ̃ + sqrt(Σ̃² - 4 det V))` to
/// avoid cancellation for strongly entangled states. The state is entangled
/// iff `ν² < 1/4`.
pub fn nu_squared(v: &CovarianceMatrix) -> Result<f64> {
    let blocks = block_decompose(v)?;
    let sigma = blocks.a.det() + blocks.b.det() - 2.0 * blocks.c.det();
    let det_v = v.matrix().det();
    let mut disc = sigma * sigma - 4.0 * det_v;
    if disc < 0.0 {
        if disc < -1e-12 {
            return Err(Error::InvalidCovariance("negative discriminant"));
        }
        disc = 0.0;
    }
    let denom = sigma + disc.sqrt();
    if denom <= 0.0 {
        return Err(Error::InvalidCovariance("non-positive invariant sum"));
    }
    Ok((2.0 * det_v / denom).max(0.0))
}

/// Logarithmic negativity `E_N = max(-ln(2ν), 0)`.
pub fn log_negativity(v: &CovarianceMatrix) -> Result<f64> {
    let nu2 = nu_squared(v)?;
    if nu2 <= 0.0 {
        return Err(Error::InvalidCovariance("vanishing symplectic eigenvalue"));
    }
    Ok((-(2.0 * nu2.sqrt()).ln()).max(0.0))
}

/// PPT test: entangled iff `ν² < 1/4 - tol` (values within `tol` of the
/// boundary count as separable).
pub fn is_entangled(v: &CovarianceMatrix, tol: f64) -> Result<bool> {
    Ok(nu_squared(v)? < 0.25 - tol)
}

/// Choice of joint quadrature combination for the product witness.
///
/// `Plus` pairs `Q = (Q₁+Q₂)/√2` with `P = (P₁-P₂)/√2`; `Minus` swaps the
/// relative signs. Which one detects depends on the sign of the cross-mode
/// correlations, so both are exposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSign {
    Plus,
    Minus,
}

impl WitnessSign {
    pub fn value(self) -> f64 {
        match self {
            WitnessSign::Plus => 1.0,
            WitnessSign::Minus => -1.0,
        }
    }
}

/// Product witness on a zero-mean two-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessResult {
    /// Variance of the joint Q quadrature.
    pub q2: f64,
    /// Variance of the joint P quadrature.
    pub p2: f64,
    /// Product `q2 * p2`; values below 1/4 certify entanglement.
    pub w: f64,
    pub sign: WitnessSign,
}

/// Evaluates `W = ⟨Q²⟩⟨P²⟩` with
/// `⟨Q²⟩ = (V₁₁ + V₃₃ + 2s·V₁₃)/2` and `⟨P²⟩ = (V₂₂ + V₄₄ - 2s·V₂₄)/2`.
pub fn product_witness(v: &CovarianceMatrix, sign: WitnessSign) -> Result<WitnessResult> {
    if v.modes() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: v.dim(),
        });
    }
    let s = sign.value();
    let q2 = 0.5 * (v.get(0, 0) + v.get(2, 2) + 2.0 * s * v.get(0, 2));
    let p2 = 0.5 * (v.get(1, 1) + v.get(3, 3) - 2.0 * s * v.get(1, 3));
    Ok(WitnessResult {
        q2,
        p2,
        w: q2 * p2,
        sign,
    })
}

/// The witness with the smaller product over both sign choices.
pub fn optimal_product_witness(v: &CovarianceMatrix) -> Result<WitnessResult> {
    let plus = product_witness(v, WitnessSign::Plus)?;
    let minus = product_witness(v, WitnessSign::Minus)?;
    Ok(if minus.w < plus.w { minus } else { plus })
}
