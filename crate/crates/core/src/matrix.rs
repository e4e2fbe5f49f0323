//! Dense complex matrices and the handful of spectral primitives the rest of
//! the crate is built on: determinant, largest singular value, spectral
//! radius and the principal singular pair.
//!
//! Factorizations are delegated to `nalgebra` (partial-pivot LU, complex
//! Schur, one-sided SVD). All routines are deterministic: the same input bits
//! always produce the same output bits.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Errors raised when building or combining matrices.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries, got {actual}")]
    EntryCount { expected: usize, actual: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}

/// Tolerances and iteration caps shared by every factorization in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericSettings {
    /// Convergence threshold handed to the SVD and Schur iterations.
    pub eps: f64,
    /// Cap on QR sweeps in the SVD and Schur iterations (0 = until convergence).
    pub max_sweeps: usize,
    /// Relative accuracy promised for `sigma_max` and `spectral_radius`.
    pub value_rel_tol: f64,
    /// Relative residual promised for `principal_singular_vectors`.
    pub vector_rel_residual: f64,
}

impl NumericSettings {
    pub const DEFAULT: NumericSettings = NumericSettings {
        eps: f64::EPSILON,
        max_sweeps: 0,
        value_rel_tol: 1e-10,
        vector_rel_residual: 1e-8,
    };
}

impl Default for NumericSettings {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

fn check_finite(m: &DMatrix<Complex64>) -> Result<(), MatrixError> {
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let z = m[(r, c)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(MatrixError::NonFinite { row: r, col: c });
            }
        }
    }
    Ok(())
}

impl ComplexMatrix {
    /// Wraps an `nalgebra` matrix after checking shape and finiteness.
    pub fn new(inner: DMatrix<Complex64>) -> Result<Self, MatrixError> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(MatrixError::Empty);
        }
        check_finite(&inner)?;
        Ok(Self { inner })
    }

    pub fn from_row_major(
        n_rows: usize,
        n_cols: usize,
        entries: &[Complex64],
    ) -> Result<Self, MatrixError> {
        if entries.len() != n_rows * n_cols {
            return Err(MatrixError::EntryCount {
                expected: n_rows * n_cols,
                actual: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(n_rows, n_cols, entries))
    }

    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let n_rows = rows.len();
        if n_rows == 0 {
            return Err(MatrixError::Empty);
        }
        let n_cols = rows[0].as_ref().len();
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: n_cols,
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_row_major(n_rows, n_cols, &entries)
    }

    /// Real-valued rows, imaginary parts zero.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity of size 0");
        Self {
            inner: DMatrix::identity(n, n),
        }
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        assert!(n_rows > 0 && n_cols > 0, "empty zero matrix");
        Self {
            inner: DMatrix::zeros(n_rows, n_cols),
        }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self, MatrixError> {
        if diag.is_empty() {
            return Err(MatrixError::Empty);
        }
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn n_rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn n_cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.n_rows() == self.n_cols()
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.n_rows())
        } else {
            Err(MatrixError::NotSquare {
                rows: self.n_rows(),
                cols: self.n_cols(),
            })
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    /// Replaces one entry. Non-finite values are rejected.
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) -> Result<(), MatrixError> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(MatrixError::NonFinite { row, col });
        }
        self.inner[(row, col)] = value;
        Ok(())
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.n_rows() * self.n_cols());
        for r in 0..self.n_rows() {
            for c in 0..self.n_cols() {
                out.push(self.inner[(r, c)]);
            }
        }
        out
    }

    pub fn as_inner(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn scale(&self, c: Complex64) -> Result<Self, MatrixError> {
        Self::new(&self.inner * c)
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<Self, MatrixError> {
        if self.n_cols() != rhs.n_rows() {
            return Err(MatrixError::DimensionMismatch {
                left: (self.n_rows(), self.n_cols()),
                right: (rhs.n_rows(), rhs.n_cols()),
            });
        }
        Self::new(&self.inner * &rhs.inner)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.inner.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

/// Determinant by LU factorization with partial pivoting.
///
/// Near-singular input returns the computed (possibly tiny) value.
pub fn determinant(m: &ComplexMatrix) -> Result<Complex64, MatrixError> {
    let n = m.dim()?;
    if n == 1 {
        return Ok(m.get(0, 0));
    }
    Ok(m.inner.clone().lu().determinant())
}

/// Largest singular value.
pub fn sigma_max(m: &ComplexMatrix) -> f64 {
    sigma_max_with(m, &NumericSettings::DEFAULT)
}

pub fn sigma_max_with(m: &ComplexMatrix, settings: &NumericSettings) -> f64 {
    raw_sigma_max(&m.inner, settings)
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(m: &ComplexMatrix) -> Result<f64, MatrixError> {
    spectral_radius_with(m, &NumericSettings::DEFAULT)
}

pub fn spectral_radius_with(
    m: &ComplexMatrix,
    settings: &NumericSettings,
) -> Result<f64, MatrixError> {
    m.dim()?;
    Ok(raw_spectral_radius(&m.inner, settings))
}

/// Eigenvalues of a square matrix, in the order the Schur form produces them.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>, MatrixError> {
    m.dim()?;
    Ok(raw_eigenvalues(&m.inner, &NumericSettings::DEFAULT))
}

/// The principal singular pair as unit vectors `(u, v)` with `m v = σ_max u`.
///
/// When `σ_max` is repeated any valid pair may be returned. For the zero
/// matrix the first canonical basis vector is returned on both sides.
pub fn principal_singular_vectors(m: &ComplexMatrix) -> (Vec<Complex64>, Vec<Complex64>) {
    let (_, u, v) = raw_principal_triplet(&m.inner, &NumericSettings::DEFAULT);
    (u.iter().copied().collect(), v.iter().copied().collect())
}

// Unchecked kernels shared with the SSV engine's inner loops.

pub(crate) fn raw_singular_values(
    m: &DMatrix<Complex64>,
    settings: &NumericSettings,
) -> DVector<f64> {
    match m
        .clone()
        .try_svd(false, false, settings.eps, settings.max_sweeps)
    {
        Some(svd) => svd.singular_values,
        None => m.singular_values(),
    }
}

pub(crate) fn raw_sigma_max(m: &DMatrix<Complex64>, settings: &NumericSettings) -> f64 {
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[(0, 0)].norm();
    }
    raw_singular_values(m, settings).max()
}

pub(crate) fn raw_principal_triplet(
    m: &DMatrix<Complex64>,
    settings: &NumericSettings,
) -> (f64, DVector<Complex64>, DVector<Complex64>) {
    let (rows, cols) = m.shape();
    let svd = m
        .clone()
        .try_svd(true, true, settings.eps, settings.max_sweeps)
        .unwrap_or_else(|| m.clone().svd(true, true));
    let sv = &svd.singular_values;
    let mut k = 0;
    for i in 1..sv.len() {
        if sv[i] > sv[k] {
            k = i;
        }
    }
    let sigma = sv[k];
    if sigma == 0.0 {
        let mut e_u = DVector::zeros(rows);
        let mut e_v = DVector::zeros(cols);
        e_u[0] = Complex64::new(1.0, 0.0);
        e_v[0] = Complex64::new(1.0, 0.0);
        return (0.0, e_u, e_v);
    }
    let u = svd.u.as_ref().expect("u requested").column(k).into_owned();
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let v = v_t.row(k).adjoint();
    (sigma, u, v)
}

pub(crate) fn raw_eigenvalues(
    m: &DMatrix<Complex64>,
    settings: &NumericSettings,
) -> Vec<Complex64> {
    let n = m.nrows();
    if n == 1 {
        return vec![m[(0, 0)]];
    }
    if n == 2 {
        return eig2(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]).to_vec();
    }
    let schur = m
        .clone()
        .try_schur(settings.eps, settings.max_sweeps)
        .unwrap_or_else(|| m.clone().schur());
    let (_, t) = schur.unpack();
    (0..n).map(|i| t[(i, i)]).collect()
}

/// Closed-form eigenvalues of a 2x2 matrix, using the stable root pairing.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 2] {
    let zero = Complex64::new(0.0, 0.0);
    if b == zero || c == zero {
        return [a, d];
    }
    let half_tr = (a + d) * 0.5;
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    // pick the sign that avoids cancellation
    let big = if (half_tr + disc).norm() >= (half_tr - disc).norm() {
        half_tr + disc
    } else {
        half_tr - disc
    };
    let det = a * d - b * c;
    let small = if big.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        det / big
    };
    [big, small]
}

pub(crate) fn raw_spectral_radius(m: &DMatrix<Complex64>, settings: &NumericSettings) -> f64 {
    raw_eigenvalues(m, settings)
        .into_iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Dominant eigenvalue (largest modulus; first index on ties).
pub(crate) fn raw_dominant_eigenvalue(
    m: &DMatrix<Complex64>,
    settings: &NumericSettings,
) -> Complex64 {
    let mut best = Complex64::new(0.0, 0.0);
    for z in raw_eigenvalues(m, settings) {
        if z.norm() > best.norm() {
            best = z;
        }
    }
    best
}
