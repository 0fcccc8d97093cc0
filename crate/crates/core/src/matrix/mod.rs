//! Dense complex matrices and the numerical substrate built on them.
//!
//! Storage is row-major `Complex64`. Every frame operator in this crate is
//! materialized as a [`Matrix`]; vectors are plain `[C64]` slices and the
//! inner product is linear in its first argument, `<a, b> = sum a_i conj(b_i)`.

mod svd;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) use svd::{inverse_square_from_factors, pinv_from_factors, projector_from_basis};
pub use svd::{
    numerical_rank, op_norm, pinv, pinv_at_rank, range_projector, singular_values, svd,
    svd_at_rank, SvdFactors,
};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Numerical thresholds shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative singular-value cutoff; a value is kept iff
    /// `sigma > rank_rel * sigma_max * max(rows, cols)`.
    pub rank_rel: f64,
    /// Absolute tolerance for identity checks.
    pub identity_abs: f64,
    /// Tight iff `B / A - 1 <= tightness_rel`.
    pub tightness_rel: f64,
}

impl Tolerance {
    pub const DEFAULT_RANK_REL: f64 = 1e-12;
    pub const DEFAULT_IDENTITY_ABS: f64 = 1e-10;
    pub const DEFAULT_TIGHTNESS_REL: f64 = 1e-8;

    pub fn new(rank_rel: f64, identity_abs: f64) -> Result<Self> {
        Self {
            rank_rel,
            identity_abs,
            tightness_rel: Self::DEFAULT_TIGHTNESS_REL,
        }
        .validated()
    }

    pub fn with_identity_abs(self, identity_abs: f64) -> Result<Self> {
        Self { identity_abs, ..self }.validated()
    }

    pub fn with_rank_rel(self, rank_rel: f64) -> Result<Self> {
        Self { rank_rel, ..self }.validated()
    }

    pub fn with_tightness_rel(self, tightness_rel: f64) -> Result<Self> {
        Self { tightness_rel, ..self }.validated()
    }

    /// Multiplies the identity tolerance by `factor` (used for ill-conditioned inputs).
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            identity_abs: self.identity_abs * factor.max(1.0),
            ..self
        }
    }

    pub fn validated(self) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(self.rank_rel) || self.rank_rel >= 1.0 {
            return Err(Error::InvalidTolerance(format!(
                "rank_rel must lie in (0, 1), got {}",
                self.rank_rel
            )));
        }
        if !ok(self.identity_abs) {
            return Err(Error::InvalidTolerance(format!(
                "identity_abs must be positive, got {}",
                self.identity_abs
            )));
        }
        if !ok(self.tightness_rel) {
            return Err(Error::InvalidTolerance(format!(
                "tightness_rel must be positive, got {}",
                self.tightness_rel
            )));
        }
        Ok(self)
    }

    /// Absolute singular-value cutoff for a matrix of the given shape.
    pub fn cutoff(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.rank_rel * sigma_max * rows.max(cols) as f64
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_rel: Self::DEFAULT_RANK_REL,
            identity_abs: Self::DEFAULT_IDENTITY_ABS,
            tightness_rel: Self::DEFAULT_TIGHTNESS_REL,
        }
    }
}

/// Dense complex matrix, row-major.
///
/// Shapes with zero rows or columns are permitted so that rank-zero factors
/// (an `n x 0` basis, say) can be represented.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data, rejecting wrong lengths and
    /// non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix data",
                expected: rows * cols,
                found: data.len(),
            });
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(rows.len(), cols, data)
    }

    /// Real rows embedded with zero imaginary parts.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<C64>]) -> Result<Self> {
        for c in columns {
            if c.len() != nrows {
                return Err(Error::DimensionMismatch {
                    context: "matrix column",
                    expected: nrows,
                    found: c.len(),
                });
            }
        }
        let data = (0..nrows)
            .flat_map(|i| columns.iter().map(move |c| c[i]))
            .collect();
        Self::from_vec(nrows, columns.len(), data)
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols, "mul_vec: length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "max_abs_diff: shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Max deviation from self-adjointness.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn sub_columns(&self, range: std::ops::Range<usize>) -> Self {
        Self::from_fn(self.rows, range.len(), |i, j| self[(i, range.start + j)])
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if *a == ZERO {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "sub: shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    /// Inverse of a square matrix by Gauss-Jordan elimination with partial
    /// pivoting. Returns `None` when a pivot vanishes.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))?;
            if a[(pivot, col)].norm() == 0.0 {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let d = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= d;
                inv[(col, j)] /= d;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = a[(i, col)];
                if factor == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[(col, j)], inv[(col, j)]);
                    a[(i, j)] -= factor * ac;
                    inv[(i, j)] -= factor * ic;
                }
            }
        }
        Some(inv)
    }
}

/// Conjugate transpose as a free function.
pub fn adjoint(m: &Matrix) -> Matrix {
    m.adjoint()
}

/// `<a, b> = sum a_i conj(b_i)`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    norm_sqr(a).sqrt()
}

pub fn sub_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|x| x * s).collect()
}

pub fn max_abs_diff_vec(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn real_vec(xs: &[f64]) -> Vec<C64> {
    xs.iter().map(|&x| C64::new(x, 0.0)).collect()
}

/// Canonical unit vector `e_k` of length `len`.
pub fn unit_vec(len: usize, k: usize) -> Vec<C64> {
    let mut v = vec![ZERO; len];
    v[k] = ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let i = C64::new(0.0, 1.0);
        let m = Matrix::from_rows(&[vec![i, ZERO], vec![ZERO, ONE]]).unwrap();
        let expected = Matrix::from_rows(&[vec![-i, ZERO], vec![ZERO, ONE]]).unwrap();
        assert_eq!(m.adjoint(), expected);
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn adjoint_of_real_symmetric_is_itself() {
        let m = Matrix::from_real_rows(&[&[2.0, -1.0], &[-1.0, 5.0]]).unwrap();
        assert_eq!(m.adjoint(), m);
    }

    #[test]
    fn adjoint_of_wide_matrix() {
        let m = Matrix::from_fn(2, 3, |i, j| C64::new(i as f64 + 1.0, j as f64 - 2.0));
        let a = m.adjoint();
        assert_eq!(a.shape(), (3, 2));
        for j in 0..3 {
            for k in 0..2 {
                assert_eq!(a[(j, k)], m[(k, j)].conj());
            }
        }
    }

    #[test]
    fn rejects_non_finite_and_ragged() {
        assert_eq!(
            Matrix::from_vec(1, 1, vec![C64::new(f64::NAN, 0.0)]),
            Err(Error::NonFinite("matrix"))
        );
        assert!(matches!(
            Matrix::from_rows(&[vec![ONE], vec![ONE, ONE]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 1e-10).is_err());
        assert!(Tolerance::new(1.0, 1e-10).is_err());
        assert!(Tolerance::new(1e-12, -1.0).is_err());
        assert!(Tolerance::new(1e-12, 1e-10).is_ok());
        assert_eq!(Tolerance::default().scaled(1e6).identity_abs, 1e-4);
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = Matrix::from_real_rows(&[&[0.0, 2.0], &[1.0, 1.0]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).max_abs_diff(&Matrix::identity(2)) < 1e-15);
        assert!(Matrix::zeros(2, 2).inverse().is_none());
    }

    #[test]
    fn columns_round_trip() {
        let cols = vec![real_vec(&[1.0, 2.0]), real_vec(&[3.0, 4.0]), real_vec(&[5.0, 6.0])];
        let m = Matrix::from_columns(2, &cols).unwrap();
        assert_eq!(m[(1, 2)], C64::new(6.0, 0.0));
        assert_eq!(m.columns(), cols);
    }
}
