//! Symplectic form, covariance matrices and Gaussian states.
//!
//! Conventions used throughout the crate:
//! - quadrature ordering is (Q1, P1, ..., Qf, Pf);
//! - the symplectic form is block-diagonal with per-mode blocks
//!   `[[0, 1], [-1, 0]]`;
//! - vacuum variance is 1/2, so a covariance matrix V is physical iff
//!   `V + (i/2)Δ` is positive semidefinite and every symplectic eigenvalue
//!   is at least 1/2.

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, hermitian_min_eigenvalue, symmetric_sqrt, ComplexMatrix, Matrix,
    STRUCTURE_TOL,
};

/// Default tolerance for positive-semidefiniteness checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// The antisymmetric form encoding the canonical commutation relations.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    modes: usize,
    mat: Matrix,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::EmptySystem);
        }
        let block = Matrix::from_row_slice(2, &[0.0, 1.0, -1.0, 0.0]);
        let mut mat = block.clone();
        for _ in 1..modes {
            mat = mat.direct_sum(&block);
        }
        Ok(SymplecticForm { modes, mat })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }
}

/// Symmetric matrix of symmetrized quadrature second moments.
///
/// The constructor enforces symmetry and finiteness only; whether the matrix
/// satisfies the uncertainty relation is a separate question answered by
/// [`CovarianceMatrix::is_valid`], so partially transposed matrices can be
/// carried by the same type.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    modes: usize,
    mat: Matrix,
}

impl CovarianceMatrix {
    pub fn new(mat: Matrix) -> Result<Self> {
        let dim = mat.dim();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: dim,
            });
        }
        if !mat.is_finite() {
            return Err(Error::NonFinite { name: "covariance" });
        }
        let defect = mat.symmetry_defect();
        if defect > STRUCTURE_TOL * mat.max_abs().max(1.0) {
            return Err(Error::NotSymmetric { defect });
        }
        Ok(CovarianceMatrix {
            modes: dim / 2,
            mat: mat.symmetrized(),
        })
    }

    /// Vacuum state covariance `(1/2)·I`. Panics on a zero-mode system.
    pub fn vacuum(modes: usize) -> Self {
        assert!(modes >= 1, "mode count must be at least 1");
        CovarianceMatrix {
            modes,
            mat: Matrix::identity(2 * modes).scaled(0.5),
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        2 * self.modes
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mat.get(i, j)
    }

    /// Uncertainty-relation check: smallest eigenvalue of `V + (i/2)Δ` must
    /// be at least `-tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        let delta = SymplecticForm::new(self.modes).expect("modes >= 1");
        let h = ComplexMatrix::from_parts(&self.mat, &delta.matrix().scaled(0.5));
        match hermitian_min_eigenvalue(&h) {
            Ok(min) => min >= -tol,
            Err(_) => false,
        }
    }

    /// Symplectic spectrum: the moduli of the eigenvalues of `iΔV`, one per
    /// mode, in ascending order.
    ///
    /// Computed through the Hermitian matrix `i·V^{1/2} Δ V^{1/2}`, which is
    /// similar to `iΔV` and whose spectrum is `{±ν_k}`.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let delta = SymplecticForm::new(self.modes)?;
        let root = symmetric_sqrt(&self.mat)?;
        let w = root.matmul(delta.matrix()).matmul(&root);
        let h = ComplexMatrix::from_parts(&Matrix::zeros(self.dim()), &w);
        let (eigenvalues, _) = hermitian_eigen(&h)?;
        let mut moduli: Vec<f64> = eigenvalues.iter().map(|l| l.abs()).collect();
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // The spectrum comes in ± pairs; average each pair.
        Ok(moduli.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
    }

    /// Partial transposition of the second mode: `Λ V Λ` with
    /// `Λ = diag(1, 1, 1, -1)`. Exact (sign flips only) and an involution.
    pub fn partial_transpose(&self) -> Result<CovarianceMatrix> {
        if self.modes != 2 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: self.dim(),
            });
        }
        let signs = [1.0, 1.0, 1.0, -1.0];
        let mut out = Matrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                out.set(i, j, signs[i] * self.mat.get(i, j) * signs[j]);
            }
        }
        Ok(CovarianceMatrix {
            modes: 2,
            mat: out,
        })
    }

    /// Phase-space rotation of a single mode of a two-mode covariance matrix.
    /// A local symplectic congruence, so the symplectic spectrum is unchanged.
    pub fn rotate_mode(&self, mode: usize, theta: f64) -> Result<CovarianceMatrix> {
        if self.modes != 2 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: self.dim(),
            });
        }
        if mode != 1 && mode != 2 {
            return Err(Error::InvalidMode(mode));
        }
        if !theta.is_finite() {
            return Err(Error::NonFinite { name: "theta" });
        }
        let (c, s) = (theta.cos(), theta.sin());
        let k = Matrix::from_row_slice(2, &[c, -s, s, c]);
        let mut full = Matrix::identity(4);
        full.set_block(2 * (mode - 1), 2 * (mode - 1), &k);
        let rotated = full.transpose().matmul(&self.mat).matmul(&full);
        CovarianceMatrix::new(rotated)
    }
}

/// Gaussian state: mean quadrature vector plus covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: Vec<f64>,
    cov: CovarianceMatrix,
}

impl GaussianState {
    pub fn new(mean: Vec<f64>, cov: CovarianceMatrix) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.dim(),
                got: mean.len(),
            });
        }
        if !mean.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { name: "mean" });
        }
        Ok(GaussianState { mean, cov })
    }

    /// Zero-mean state.
    pub fn centered(cov: CovarianceMatrix) -> Self {
        GaussianState {
            mean: vec![0.0; cov.dim()],
            cov,
        }
    }

    pub fn vacuum(modes: usize) -> Self {
        GaussianState::centered(CovarianceMatrix::vacuum(modes))
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn cov(&self) -> &CovarianceMatrix {
        &self.cov
    }
}
