//! Dense linear algebra for the tiny matrices used throughout the crate.
//!
//! All eigenvalue work goes through one cyclic Jacobi kernel on real symmetric
//! matrices. Hermitian matrices are handled through the real embedding
//! `[[re, -im], [im, re]]`, whose spectrum is the Hermitian spectrum with every
//! eigenvalue doubled.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Default tolerance for PSD membership tests.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;
/// Default relative tolerance for numeric rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;
const PAIRING_TOL: f64 = 1e-8;
/// Eigenvalues below this are rounding noise of cancelled expressions, never a
/// usable pivot for an inverse square root.
const INV_SQRT_ABS_FLOOR: f64 = 1e-20;

/// Real symmetric `n × n` matrix. Every write goes to both `(i, j)` and `(j, i)`.
#[derive(Clone, PartialEq)]
pub struct RealSymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealSymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Row-major constructor; the input must be exactly symmetric.
    pub fn from_row_major(n: usize, values: &[f64]) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::InvalidInput("row-major data has the wrong length"));
        }
        for i in 0..n {
            for j in 0..i {
                if values[i * n + j] != values[j * n + i] {
                    return Err(Error::InvalidInput("matrix is not symmetric"));
                }
            }
        }
        Ok(Self { n, data: values.to_vec() })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    /// Row-major view of all `n²` entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Frobenius inner product `Tr(A B)`.
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|v| v * factor).collect() }
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: f64, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + factor * b).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn to_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix { n: self.n, re: self.data.clone(), im: vec![0.0; self.n * self.n] }
    }
}

impl fmt::Debug for RealSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}

/// Complex self-adjoint `n × n` matrix stored as a real symmetric part and a
/// real antisymmetric part.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, re: vec![0.0; n * n], im: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        RealSymMatrix::identity(n).to_hermitian()
    }

    pub fn diagonal(values: &[f64]) -> Self {
        RealSymMatrix::diagonal(values).to_hermitian()
    }

    /// Builds a matrix from `f(i, j)` on the upper triangle; the lower triangle is
    /// the conjugate mirror and the imaginary part of the diagonal is dropped.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Constructor from row-major real and imaginary parts that must satisfy the
    /// Hermitian symmetry exactly.
    pub fn from_parts(n: usize, re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        Self::from_parts_approx(n, re, im, 0.0)
    }

    /// Like [`HermitianMatrix::from_parts`] but accepts asymmetries up to `tol`
    /// (absolute) and averages them away.
    pub fn from_parts_approx(n: usize, re: Vec<f64>, im: Vec<f64>, tol: f64) -> Result<Self> {
        if re.len() != n * n || im.len() != n * n {
            return Err(Error::InvalidInput("real/imaginary parts have the wrong length"));
        }
        if re.iter().chain(&im).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite entry"));
        }
        for i in 0..n {
            if im[i * n + i].abs() > tol {
                return Err(Error::InvalidInput("diagonal has a nonzero imaginary part"));
            }
            for j in 0..i {
                if (re[i * n + j] - re[j * n + i]).abs() > tol
                    || (im[i * n + j] + im[j * n + i]).abs() > tol
                {
                    return Err(Error::InvalidInput("matrix is not Hermitian"));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(re[i * n + i], 0.0)
            } else {
                Complex64::new(
                    0.5 * (re[i * n + j] + re[j * n + i]),
                    0.5 * (im[i * n + j] - im[j * n + i]),
                )
            }
        }))
    }

    /// Projector `|v⟩⟨v|`.
    pub fn projector(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let k = i * self.n + j;
        Complex64::new(self.re[k], self.im[k])
    }

    /// Writes `value` at `(i, j)` and its conjugate at `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        let n = self.n;
        if i == j {
            self.re[i * n + i] = value.re;
            self.im[i * n + i] = 0.0;
        } else {
            self.re[i * n + j] = value.re;
            self.im[i * n + j] = value.im;
            self.re[j * n + i] = value.re;
            self.im[j * n + i] = -value.im;
        }
    }

    /// Row-major real part.
    pub fn re(&self) -> &[f64] {
        &self.re
    }

    /// Row-major imaginary part.
    pub fn im(&self) -> &[f64] {
        &self.im
    }

    pub fn real_part(&self) -> RealSymMatrix {
        RealSymMatrix { n: self.n, data: self.re.clone() }
    }

    pub fn imag_norm(&self) -> f64 {
        self.im.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.re[i * self.n + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.re.iter().chain(&self.im).map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Hilbert–Schmidt pairing `Tr(A B)`, real for Hermitian arguments.
    pub fn hs_inner(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        // Tr(AB) = Σ A_ij B_ji = Σ (re_a re_b + im_a im_b) over (i, j).
        self.re.iter().zip(&other.re).map(|(a, b)| a * b).sum::<f64>()
            + self.im.iter().zip(&other.im).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            re: self.re.iter().map(|v| v * factor).collect(),
            im: self.im.iter().map(|v| v * factor).collect(),
        }
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: f64, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            re: self.re.iter().zip(&other.re).map(|(a, b)| a + factor * b).collect(),
            im: self.im.iter().zip(&other.im).map(|(a, b)| a + factor * b).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.re.iter().chain(&self.im).all(|v| v.is_finite())
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| self.get(i, j))
    }

    /// The `2n × 2n` real symmetric embedding `[[re, -im], [im, re]]`.
    pub fn real_embedding(&self) -> RealSymMatrix {
        let n = self.n;
        let mut e = RealSymMatrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                let (re, im) = (self.re[i * n + j], self.im[i * n + j]);
                e.data[i * 2 * n + j] = re;
                e.data[(i + n) * 2 * n + j + n] = re;
                e.data[i * 2 * n + j + n] = -im;
                e.data[(i + n) * 2 * n + j] = im;
            }
        }
        e
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<Complex64>> =
            (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// General complex square matrix (Kraus operators, conjugations, products).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Real matrix from row-major entries.
    pub fn from_real(n: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), n * n, "row-major data has the wrong length");
        Self::from_fn(n, |i, j| Complex64::new(values[i * n + j], 0.0))
    }

    /// Matrix unit `E_kl`.
    pub fn unit(n: usize, k: usize, l: usize) -> Self {
        let mut m = Self::zeros(n);
        m.data[k * n + l] = Complex64::new(1.0, 0.0);
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.n + j] = value;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        Self::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Kronecker product `self ⊗ other` with row index `i·m + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        Self::from_fn(n * m, |r, c| self.get(r / m, c / m) * other.get(r % m, c % m))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|v| v * factor).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Converts to a [`HermitianMatrix`] when `‖A − A†‖_max ≤ tol`.
    pub fn to_hermitian(&self, tol: f64) -> Result<HermitianMatrix> {
        let n = self.n;
        let re = self.data.iter().map(|v| v.re).collect();
        let im = self.data.iter().map(|v| v.im).collect();
        HermitianMatrix::from_parts_approx(n, re, im, tol)
    }
}

/// Real `rows × cols` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    /// Empty matrix with a fixed column count, to be filled with [`RealMatrix::push_row`].
    pub fn with_cols(cols: usize) -> Self {
        Self { rows: 0, cols, data: Vec::new() }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidInput("row-major data has the wrong length"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn push_row(&mut self, row: &[f64]) {
        assert_eq!(row.len(), self.cols, "row has the wrong length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "vector has the wrong length");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }
}

/// Eigenvalues sorted ascending, optionally with orthonormal eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Column-major: eigenvector `k` occupies `[k·n, (k+1)·n)`.
    pub eigenvectors: Option<Vec<f64>>,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    pub fn eigenvector(&self, k: usize) -> Option<&[f64]> {
        let n = self.eigenvalues.len();
        self.eigenvectors.as_ref().map(|v| &v[k * n..(k + 1) * n])
    }

    /// Number of eigenvalues below `-tol`.
    pub fn count_negative(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&v| v < -tol).count()
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cyclic Jacobi on a full row-major symmetric matrix. Returns unsorted
/// eigenvalues and, if requested, the row-major rotation accumulator whose
/// columns are the eigenvectors.
fn jacobi_in_place(n: usize, a: &mut [f64], want_vectors: bool) -> Result<Option<Vec<f64>>> {
    let mut v = if want_vectors {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        Some(v)
    } else {
        None
    };
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Ok(v);
    }
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off(a) <= JACOBI_OFF_TOL * norm {
            return Ok(v);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.0
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                if t == 0.0 {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if off(a) <= JACOBI_OFF_TOL * norm {
        Ok(v)
    } else {
        Err(Error::InternalError("Jacobi sweeps did not converge"))
    }
}

fn eig_sym_impl(a: &RealSymMatrix, want_vectors: bool) -> Result<Spectrum> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("non-finite matrix entry"));
    }
    let n = a.n;
    let mut work = a.data.clone();
    let rot = jacobi_in_place(n, &mut work, want_vectors)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[i * n + i].total_cmp(&work[j * n + j]));
    let eigenvalues = order.iter().map(|&i| work[i * n + i]).collect();
    let eigenvectors = rot.map(|r| {
        let mut cols = Vec::with_capacity(n * n);
        for &k in &order {
            cols.extend((0..n).map(|i| r[i * n + k]));
        }
        cols
    });
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Eigenvalues (ascending) and eigenvectors of a real symmetric matrix.
pub fn eig_sym(a: &RealSymMatrix) -> Result<Spectrum> {
    eig_sym_impl(a, true)
}

/// Eigenvalues only; skips the rotation accumulation.
pub fn eigvals_sym(a: &RealSymMatrix) -> Result<Vec<f64>> {
    Ok(eig_sym_impl(a, false)?.eigenvalues)
}

/// Eigenvalues of a Hermitian matrix through the doubled real embedding.
///
/// The embedding spectrum is paired greedily after sorting; a pair that
/// differs by more than `1e-8·max(1, ‖A‖_F)` signals a broken invariant and is
/// reported as [`Error::InternalError`].
pub fn eig_herm(a: &HermitianMatrix) -> Result<Spectrum> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("non-finite matrix entry"));
    }
    let doubled = eigvals_sym(&a.real_embedding())?;
    let tol = PAIRING_TOL * a.frobenius_norm().max(1.0);
    let mut eigenvalues = Vec::with_capacity(a.n);
    for pair in doubled.chunks(2) {
        if (pair[1] - pair[0]).abs() > tol {
            return Err(Error::InternalError("embedding eigenvalues do not pair up"));
        }
        eigenvalues.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(Spectrum { eigenvalues, eigenvectors: None })
}

/// `λ_min(A) ≥ −tol · max(1, ‖A‖_F)`.
pub fn is_psd(a: &HermitianMatrix, tol: f64) -> Result<bool> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidInput("tolerance must be nonnegative"));
    }
    let spectrum = eig_herm(a)?;
    Ok(spectrum.min() >= -tol * a.frobenius_norm().max(1.0))
}

/// `A^{-1/2}` of a positive definite Hermitian matrix.
///
/// Requires `λ_min > 1e-12·‖A‖_F` and `λ_min > 1e-20`.
/// Computed on the real embedding, which commutes with functional calculus,
/// so the result is read back from the `[[X, -Y], [Y, X]]` blocks.
pub fn inv_sqrt(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let spectrum = eig_sym(&a.real_embedding())?;
    let min = spectrum.min();
    if !(min > 1e-12 * a.frobenius_norm() && min > INV_SQRT_ABS_FLOOR) {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    let n = a.n;
    let m = 2 * n;
    let vecs = spectrum.eigenvectors.as_ref().expect("eigenvectors requested");
    let entry = |r: usize, c: usize| -> f64 {
        spectrum
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &lambda)| vecs[k * m + r] * vecs[k * m + c] / lambda.sqrt())
            .sum()
    };
    Ok(HermitianMatrix::from_fn(n, |i, j| Complex64::new(entry(i, j), entry(i + n, j))))
}

/// Orthonormal basis of `{v : M v = 0}`.
///
/// Tall inputs are first reduced to their `cols × cols` triangular factor by
/// Householder QR; the one-sided Jacobi SVD then orthogonalises columns and
/// the right singular vectors with `σ ≤ rank_tol · σ_max` span the nullspace.
pub fn nullspace(m: &RealMatrix, rank_tol: f64) -> Vec<Vec<f64>> {
    let cols = m.cols;
    let (rows, mut work) = if m.rows > cols {
        (cols, householder_r(m))
    } else {
        (m.rows, m.data.clone())
    };
    let (sigma, v) = one_sided_jacobi(rows, cols, &mut work);
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    let mut basis = Vec::new();
    for (k, &s) in sigma.iter().enumerate() {
        if s <= rank_tol * sigma_max {
            basis.push((0..cols).map(|i| v[i * cols + k]).collect());
        }
    }
    basis
}

/// Upper triangular `cols × cols` factor of a tall matrix, row-major.
fn householder_r(m: &RealMatrix) -> Vec<f64> {
    let (rows, cols) = (m.rows, m.cols);
    // Column-major copy keeps the reflector updates contiguous.
    let mut a = vec![0.0; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            a[j * rows + i] = m.data[i * cols + j];
        }
    }
    let mut v = vec![0.0; rows];
    for k in 0..cols {
        let col = &a[k * rows..(k + 1) * rows];
        let norm = col[k..].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if col[k] > 0.0 { -norm } else { norm };
        v[k..].copy_from_slice(&col[k..]);
        v[k] -= alpha;
        let vnorm2 = v[k..].iter().map(|x| x * x).sum::<f64>();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..cols {
            let cj = &mut a[j * rows..(j + 1) * rows];
            let proj = 2.0 * dot(&v[k..], &cj[k..]) / vnorm2;
            for (x, vi) in cj[k..].iter_mut().zip(&v[k..]) {
                *x -= proj * vi;
            }
        }
    }
    let mut r = vec![0.0; cols * cols];
    for i in 0..cols {
        for j in i..cols {
            r[i * cols + j] = a[j * rows + i];
        }
    }
    r
}

/// Hestenes one-sided Jacobi. Returns column norms (singular values) and the
/// row-major accumulated right rotation `V`.
fn one_sided_jacobi(rows: usize, cols: usize, a: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    // Work column-major for contiguous column access.
    let mut w = vec![0.0; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            w[j * rows + i] = a[i * cols + j];
        }
    }
    let mut v = vec![0.0; cols * cols];
    for j in 0..cols {
        v[j * cols + j] = 1.0;
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (wp, wq) = (&w[p * rows..(p + 1) * rows], &w[q * rows..(q + 1) * rows]);
                let alpha = dot(wp, wp);
                let beta = dot(wq, wq);
                let gamma = dot(wp, wq);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let x = w[p * rows + i];
                    let y = w[q * rows + i];
                    w[p * rows + i] = c * x - s * y;
                    w[q * rows + i] = s * x + c * y;
                }
                for i in 0..cols {
                    let x = v[i * cols + p];
                    let y = v[i * cols + q];
                    v[i * cols + p] = c * x - s * y;
                    v[i * cols + q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = (0..cols)
        .map(|j| {
            let col = &w[j * rows..(j + 1) * rows];
            dot(col, col).sqrt()
        })
        .collect();
    (sigma, v)
}

/// Number of eigenvalues with `|λ| > tol · max|λ|`.
pub fn numeric_rank(a: &HermitianMatrix, tol: f64) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("rank tolerance must be positive"));
    }
    let spectrum = eig_herm(a)?;
    let scale = spectrum.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(0);
    }
    Ok(spectrum.eigenvalues.iter().filter(|v| v.abs() > tol * scale).count())
}

/// In-place Cholesky `A = L Lᵀ` of a row-major `n × n` matrix; the lower
/// triangle receives `L`. Returns `None` when a pivot is not positive.
pub(crate) fn cholesky_in_place(n: usize, a: &mut [f64]) -> Option<()> {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if !(d > 0.0) {
            return None;
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
    }
    Some(())
}

/// Solves `L Lᵀ x = b` with the factor from [`cholesky_in_place`].
pub(crate) fn cholesky_solve(n: usize, l: &[f64], b: &mut [f64]) {
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}
