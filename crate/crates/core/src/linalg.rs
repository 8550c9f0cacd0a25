//! Dense square matrices of fixed small dimension (2 and 4 in practice) and a
//! Jacobi eigensolver for complex Hermitian matrices.
//!
//! Everything here is sized for phase-space dimensions 2f with f ∈ {1, 2}, so
//! plain `Vec`-backed storage and O(n³) algorithms are exact enough and fast
//! enough; no external solver is used.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise tolerance (relative to the matrix scale) for Hermitian/symmetric
/// structure checks.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// Off-diagonal convergence threshold for the Jacobi sweeps, relative to the
/// matrix scale.
const JACOBI_TOL: f64 = 1e-13;

const MAX_ROTATIONS: usize = 500;

/// Row-major square real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Matrix::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Builds a `dim x dim` matrix from `dim * dim` entries in row-major order.
    pub fn from_row_slice(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Matrix {
            dim,
            data: entries.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn scaled(&self, factor: f64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Block-diagonal concatenation: `[[self, 0], [0, other]]`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let n = self.dim + other.dim;
        let mut out = Matrix::zeros(n);
        out.set_block(0, 0, self);
        out.set_block(self.dim, self.dim, other);
        out
    }

    pub fn block(&self, row0: usize, col0: usize, size: usize) -> Matrix {
        let mut out = Matrix::zeros(size);
        for i in 0..size {
            for j in 0..size {
                out.set(i, j, self.get(row0 + i, col0 + j));
            }
        }
        out
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, block: &Matrix) {
        for i in 0..block.dim {
            for j in 0..block.dim {
                self.set(row0 + i, col0 + j, block.get(i, j));
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn symmetry_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                defect = defect.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        defect
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Exact symmetrization `(M + Mᵀ)/2`; bit-preserving when already symmetric.
    pub fn symmetrized(&self) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let v = 0.5 * (self.get(i, j) + self.get(j, i));
                out.set(i, j, v);
                out.set(j, i, v);
            }
        }
        out
    }

    /// Determinant by LU elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot = col;
            for row in (col + 1)..n {
                if a[row * n + col].abs() > a[pivot * n + col].abs() {
                    pivot = row;
                }
            }
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let d = a[col * n + col];
            det *= d;
            for row in (col + 1)..n {
                let f = a[row * n + col] / d;
                if f == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[row * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let mut pivot = col;
            for row in (col + 1)..n {
                if a[row * n + col].abs() > a[pivot * n + col].abs() {
                    pivot = row;
                }
            }
            let p = a[pivot * n + col];
            if p.abs() < 1e-300 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let d = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= d;
                inv.data[col * n + j] /= d;
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = a[row * n + col];
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a[row * n + j] -= f * a[col * n + j];
                    inv.data[row * n + j] -= f * inv.data[col * n + j];
                }
            }
        }
        Ok(inv)
    }
}

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds `re + i·im` from two real matrices of equal dimension.
    pub fn from_parts(re: &Matrix, im: &Matrix) -> Self {
        assert_eq!(re.dim(), im.dim());
        let n = re.dim();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, Complex64::new(re.get(i, j), im.get(i, j)));
            }
        }
        m
    }

    pub fn from_real(re: &Matrix) -> Self {
        ComplexMatrix::from_parts(re, &Matrix::zeros(re.dim()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut t = ComplexMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entrywise deviation from `H = H†`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.dim {
            defect = defect.max(self.get(i, i).im.abs());
            for j in (i + 1)..self.dim {
                defect = defect.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        defect
    }
}

/// Full eigensystem of a complex Hermitian matrix by cyclic Jacobi rotations
/// with exact 2x2 subproblem solves.
///
/// Returns eigenvalues in ascending order together with the unitary whose
/// columns are the matching eigenvectors, so that `H = U diag(λ) U†`.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = h.dim();
    if !h.is_finite() {
        return Err(Error::NonFinite { name: "matrix" });
    }
    let scale = h.max_abs().max(1.0);
    let defect = h.hermitian_defect();
    if defect > STRUCTURE_TOL * scale {
        return Err(Error::NotHermitian { defect });
    }

    let mut a = h.clone();
    let mut u = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * scale;

    let mut converged = n < 2;
    for _ in 0..MAX_ROTATIONS {
        // Largest off-diagonal pivot.
        let (mut p, mut q, mut best) = (0, 0, 0.0);
        for i in 0..n {
            for j in (i + 1)..n {
                let m = a.get(i, j).norm();
                if m > best {
                    best = m;
                    p = i;
                    q = j;
                }
            }
        }
        if best <= threshold {
            converged = true;
            break;
        }

        // Exact unitary diagonalizing the 2x2 Hermitian subblock (p, q). The
        // larger eigenvalue's eigenvector is (a_pq, λ₊ − a_pp), with the gap
        // λ₊ − a_pp computed in rationalized form to avoid cancellation.
        let app = a.get(p, p).re;
        let aqq = a.get(q, q).re;
        let apq = a.get(p, q);
        let r = apq.norm();
        let d = 0.5 * (aqq - app);
        let s0 = d.hypot(r);
        let gap = if d >= 0.0 { d + s0 } else { r * r / (s0 - d) };
        let norm = r.hypot(gap);
        let col_u = apq / norm;
        let col_v = gap / norm;

        let mut rot = ComplexMatrix::identity(n);
        rot.set(p, p, col_u);
        rot.set(q, p, Complex64::new(col_v, 0.0));
        rot.set(p, q, Complex64::new(-col_v, 0.0));
        rot.set(q, q, col_u.conj());

        a = rot.adjoint().matmul(&a).matmul(&rot);
        a.set(p, q, Complex64::new(0.0, 0.0));
        a.set(q, p, Complex64::new(0.0, 0.0));
        u = u.matmul(&rot);
    }
    if !converged {
        return Err(Error::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, dst, u.get(row, src));
        }
    }
    Ok((eigenvalues, vectors))
}

/// Smallest eigenvalue of a complex Hermitian matrix.
pub fn hermitian_min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigen(h)?.0[0])
}

/// Symmetric square root of a real symmetric positive semidefinite matrix.
///
/// Eigenvalues within a small negative rounding band are clamped to zero;
/// anything more negative is rejected.
pub fn symmetric_sqrt(m: &Matrix) -> Result<Matrix> {
    let defect = m.symmetry_defect();
    if defect > STRUCTURE_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { defect });
    }
    let (eigenvalues, vectors) = hermitian_eigen(&ComplexMatrix::from_real(m))?;
    let scale = m.max_abs().max(1.0);
    let n = m.dim();
    let mut out = Matrix::zeros(n);
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        if lambda < -1e-9 * scale {
            return Err(Error::InvalidCovariance("negative eigenvalue"));
        }
        let root = lambda.max(0.0).sqrt();
        // Real input keeps the Jacobi rotations real, so the imaginary parts
        // of the eigenvectors are identically zero.
        for i in 0..n {
            for j in 0..n {
                let v = out.get(i, j) + root * vectors.get(i, k).re * vectors.get(j, k).re;
                out.set(i, j, v);
            }
        }
    }
    Ok(out.symmetrized())
}
