//! Dense complex linear algebra for small Hermitian problems.
//!
//! Everything here is sized for desk-scale work (dimension up to a few
//! dozen): row-major storage, a cyclic Jacobi eigensolver and functional
//! calculus on the resulting spectral decomposition.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used for every matrix entry.
pub type ComplexScalar = Complex64;

/// Off-diagonal stopping threshold for the Jacobi sweeps, relative to `1 + ‖A‖_F`.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Orthonormality tolerance per unit of dimension.
pub const TOL_ORTH: f64 = 1e-12;
/// Reconstruction tolerance, relative to `max(1, ‖A‖)`.
pub const TOL_RECON: f64 = 1e-11;
/// Support cutoff relative to `max(1, ‖A‖_op)`.
pub const EPS_SUPP: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NonConvergence { sweeps: usize, off_norm: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have at least one row and column")]
    Empty,
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian: ‖M − M†‖_F = {defect:e} exceeds {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ComplexScalar::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ComplexScalar::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<ComplexScalar>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ComplexScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = ComplexScalar::new(d, 0.0);
        }
        m
    }

    /// Outer product `u v†`.
    pub fn outer(u: &[ComplexScalar], v: &[ComplexScalar]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn column(&self, k: usize) -> Vec<ComplexScalar> {
        (0..self.rows).map(|i| self[(i, k)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: ComplexScalar) -> Self {
        self.map(|z| z * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.map(|z| z * c)
    }

    pub fn map(&self, f: impl Fn(ComplexScalar) -> ComplexScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "hadamard: shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖_F`.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "distance: shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖M − M†‖_F`; zero for Hermitian input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ComplexScalar::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = ComplexScalar;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// Square matrix equal to its conjugate transpose.
///
/// Construction symmetrizes `(M + M†)/2`, so the stored entries satisfy
/// `m[j,k] == conj(m[k,j])` bit for bit and the diagonal is real.
/// [`HermitianMatrix::strict`] rejects inputs that are far from Hermitian
/// instead of silently projecting them.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self, LinalgError> {
        if m.rows == 0 {
            return Err(LinalgError::Empty);
        }
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        if let Some(pos) = m.data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: pos / m.cols,
                col: pos % m.cols,
            });
        }
        Ok(Self::symmetrized(m))
    }

    /// Validates `‖M − M†‖_F ≤ rel_tol · max(1, ‖M‖_F)` before symmetrizing.
    pub fn strict(m: ComplexMatrix, rel_tol: f64) -> Result<Self, LinalgError> {
        if m.rows == 0 {
            return Err(LinalgError::Empty);
        }
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        let defect = m.hermitian_defect();
        let tolerance = rel_tol * m.frobenius_norm().max(1.0);
        if !(defect <= tolerance) {
            return Err(LinalgError::NotHermitian { defect, tolerance });
        }
        Self::new(m)
    }

    fn symmetrized(mut m: ComplexMatrix) -> Self {
        let n = m.rows;
        for i in 0..n {
            m[(i, i)] = ComplexScalar::new(m[(i, i)].re, 0.0);
            for j in i + 1..n {
                let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
        }
        Self { inner: m }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: ComplexMatrix::identity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            inner: ComplexMatrix::zeros(n, n),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self {
            inner: ComplexMatrix::from_real_diagonal(diag),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.rows
    }

    #[inline]
    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::symmetrized(&self.inner + &other.inner)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::symmetrized(&self.inner - &other.inner)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            inner: self.inner.scale_real(c),
        }
    }

    pub fn real_trace(&self) -> f64 {
        self.inner.trace().re
    }
}

impl std::ops::Deref for HermitianMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.inner
    }
}

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    #[inline]
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    /// Same eigenvectors with replacement eigenvalues.
    pub fn with_eigenvalues(&self, eigenvalues: Vec<f64>) -> Self {
        assert_eq!(eigenvalues.len(), self.dim(), "eigenvalue count mismatch");
        Self {
            eigenvalues,
            eigenvectors: self.eigenvectors.clone(),
        }
    }

    /// Same eigenvectors with eigenvalues clamped into `[lo, hi]`.
    pub fn clamped(&self, lo: f64, hi: f64) -> Self {
        Self {
            eigenvalues: self.eigenvalues.iter().map(|&l| l.clamp(lo, hi)).collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
    }

    /// `Σ_k f(λ_k) v_k v_k†`.
    pub fn apply(&self, f: impl Fn(f64) -> ComplexScalar) -> ComplexMatrix {
        let values: Vec<ComplexScalar> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.from_eigenbasis_diagonal(&values)
    }

    /// `V diag(d) V†`.
    ///
    /// Each term is formed as `(v_ik conj(v_jk)) d_k`, so conjugating `d`
    /// yields the bitwise adjoint of the result.
    pub fn from_eigenbasis_diagonal(&self, d: &[ComplexScalar]) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| (v[(i, k)] * v[(j, k)].conj()) * d[k]).sum()
        })
    }

    /// `V† M V`: coordinates of `M` in the eigenbasis.
    pub fn to_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let v = &self.eigenvectors;
        v.adjoint().matmul(&m.matmul(v))
    }

    /// `V M V†`.
    pub fn from_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let v = &self.eigenvectors;
        v.matmul(&m.matmul(&v.adjoint()))
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|l| ComplexScalar::new(l, 0.0))
    }

    /// Rank-one projector onto the `k`-th eigenvector.
    pub fn projector(&self, k: usize) -> HermitianMatrix {
        let col = self.eigenvectors.column(k);
        HermitianMatrix::symmetrized(ComplexMatrix::outer(&col, &col))
    }

    /// Projector onto the span of eigenvectors with eigenvalue above `eps_supp`.
    pub fn support_projection(&self, eps_supp: f64) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.apply(|l| {
            if l > eps_supp {
                ComplexScalar::new(1.0, 0.0)
            } else {
                ComplexScalar::new(0.0, 0.0)
            }
        }))
    }

    /// `‖V†V − I‖_F`.
    pub fn orthonormality_defect(&self) -> f64 {
        let v = &self.eigenvectors;
        v.adjoint()
            .matmul(v)
            .frobenius_distance(&ComplexMatrix::identity(self.dim()))
    }
}

/// Free-function form of [`SpectralDecomposition::apply`].
pub fn apply_spectral_function(s: &SpectralDecomposition, f: impl Fn(f64) -> ComplexScalar) -> ComplexMatrix {
    s.apply(f)
}

/// Same as [`SpectralDecomposition::support_projection`].
pub fn support_projection(s: &SpectralDecomposition, eps_supp: f64) -> HermitianMatrix {
    s.support_projection(eps_supp)
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

struct JacobiOutcome {
    decomposition: SpectralDecomposition,
    converged: bool,
    sweeps: usize,
    off_norm: f64,
}

fn jacobi(a: &HermitianMatrix) -> JacobiOutcome {
    let n = a.dim();
    let mut m = a.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_TOL * (1.0 + m.frobenius_norm());

    let mut off = off_diagonal_norm(&m);
    let mut sweeps = 0;
    while off > threshold && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);

    JacobiOutcome {
        decomposition: SpectralDecomposition {
            eigenvalues,
            eigenvectors,
        },
        converged: off <= threshold,
        sweeps,
        off_norm: off,
    }
}

/// One complex Jacobi rotation annihilating `m[p,q]`.
///
/// The rotation is `G = diag(1, e^{-iφ}) · R(c, s)` on the `(p, q)` plane,
/// where `φ = arg m[p,q]` makes the pivot real and `R` is the classical
/// real symmetric rotation. Applies `m ← G† m G` and `v ← v G`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    let g_pp = ComplexScalar::new(c, 0.0);
    let g_pq = ComplexScalar::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * g_pp + mkq * g_qp;
        m[(k, q)] = mkp * g_pq + mkq * g_qq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = g_pp.conj() * mpk + g_qp.conj() * mqk;
        m[(q, k)] = g_pq.conj() * mpk + g_qq.conj() * mqk;
    }
    m[(p, p)] = ComplexScalar::new(app - t * r, 0.0);
    m[(q, q)] = ComplexScalar::new(aqq + t * r, 0.0);
    m[(p, q)] = ComplexScalar::new(0.0, 0.0);
    m[(q, p)] = ComplexScalar::new(0.0, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
pub fn hermitian_eig(a: &HermitianMatrix) -> Result<SpectralDecomposition, LinalgError> {
    let out = jacobi(a);
    if out.converged {
        Ok(out.decomposition)
    } else {
        Err(LinalgError::NonConvergence {
            sweeps: out.sweeps,
            off_norm: out.off_norm,
        })
    }
}

/// Largest singular value, i.e. `sqrt(λ_max(M†M))`.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    let gram = HermitianMatrix::symmetrized(m.adjoint().matmul(m));
    jacobi(&gram).decomposition.max_eigenvalue().max(0.0).sqrt()
}

pub fn is_psd(a: &HermitianMatrix, tol: f64) -> bool {
    jacobi(a).decomposition.min_eigenvalue() >= -tol
}

/// Default support cutoff for a matrix with the given operator norm.
pub fn default_eps_supp(op_norm: f64) -> f64 {
    EPS_SUPP * op_norm.max(1.0)
}
