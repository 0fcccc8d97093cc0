//! Compact SVD by one-sided (Hestenes) Jacobi rotations, and the
//! pseudoinverse, projector and rank queries derived from it.
//!
//! The input is oriented so it has at least as many rows as columns, then
//! pairs of columns are rotated until every pair is orthogonal to working
//! precision. Column norms are the singular values and the accumulated
//! rotations are the right singular vectors. One-sided Jacobi keeps the
//! computed left vectors orthogonal to `O(eps)` even for tiny singular
//! values, which the identity checks downstream depend on.

use super::{Matrix, Tolerance, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Compact factorization `M = left * diag(singular_values) * right^*`
/// truncated to the numerical rank.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    /// `rows x rank`, orthonormal columns.
    pub left_vectors: Matrix,
    /// Strictly positive, nonincreasing.
    pub singular_values: Vec<f64>,
    /// `cols x rank`, orthonormal columns.
    pub right_vectors: Matrix,
    pub rank: usize,
}

impl SvdFactors {
    pub fn reconstruct(&self) -> Matrix {
        let (rows, cols) = (self.left_vectors.rows(), self.right_vectors.rows());
        Matrix::from_fn(rows, cols, |i, j| {
            (0..self.rank)
                .map(|k| {
                    self.left_vectors[(i, k)]
                        * self.singular_values[k]
                        * self.right_vectors[(j, k)].conj()
                })
                .sum()
        })
    }

    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Smallest kept singular value.
    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }
}

/// Full (untruncated) Jacobi result in the original orientation.
struct JacobiSvd {
    /// Unit left vectors, one per singular value (zero vector where sigma = 0).
    left: Vec<Vec<C64>>,
    sigma: Vec<f64>,
    right: Vec<Vec<C64>>,
}

fn column_major(m: &Matrix) -> Vec<Vec<C64>> {
    m.columns()
}

fn jacobi(m: &Matrix) -> Result<JacobiSvd> {
    if !m.is_finite() {
        return Err(Error::NonFinite("svd input"));
    }
    let transposed = m.rows() < m.cols();
    let work = if transposed { m.adjoint() } else { m.clone() };
    let (rows, cols) = work.shape();

    let scale = work.max_abs();
    let mut a = column_major(&work);
    if scale > 0.0 {
        for col in &mut a {
            for z in col.iter_mut() {
                *z /= scale;
            }
        }
    }
    let mut v: Vec<Vec<C64>> = (0..cols).map(|j| super::unit_vec(cols, j)).collect();

    let threshold = (rows.max(1) as f64).sqrt() * f64::EPSILON;
    // columns this small are rounding residue of the scaled input
    let floor = {
        let total: f64 = a.iter().map(|c| super::norm_sqr(c)).sum();
        let e = threshold * f64::EPSILON;
        e * e * total
    };
    let mut converged = cols < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = super::norm_sqr(&a[p]);
                let beta = super::norm_sqr(&a[q]);
                if alpha <= floor || beta <= floor {
                    continue;
                }
                // a_p^* a_q
                let gamma: C64 = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= threshold * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut a, p, q, c, s, phase);
                rotate_pair(&mut v, p, q, c, s, phase);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = a.iter().map(|c| super::norm(c)).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let mut left = Vec::with_capacity(cols);
    let mut sigma = Vec::with_capacity(cols);
    let mut right = Vec::with_capacity(cols);
    for &j in &order {
        let nrm = norms[j];
        let u: Vec<C64> = if nrm > 0.0 {
            a[j].iter().map(|z| z / nrm).collect()
        } else {
            vec![ZERO; rows]
        };
        left.push(u);
        sigma.push(nrm * scale);
        right.push(v[j].clone());
    }

    Ok(if transposed {
        JacobiSvd {
            left: right,
            sigma,
            right: left,
        }
    } else {
        JacobiSvd { left, sigma, right }
    })
}

fn rotate_pair(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let (head, tail) = cols.split_at_mut(q);
    let (cp, cq) = (&mut head[p], &mut tail[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let yq = *y * phase;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

/// All `min(rows, cols)` singular values, nonincreasing.
pub fn singular_values(m: &Matrix) -> Result<Vec<f64>> {
    Ok(jacobi(m)?.sigma)
}

/// Compact SVD truncated at the rank cutoff of `tol`.
///
/// Each right singular vector is rotated so that its first entry of largest
/// modulus is real and positive; the left vector gets the same phase.
pub fn svd(m: &Matrix, tol: &Tolerance) -> Result<SvdFactors> {
    let (rows, cols) = m.shape();
    let full = jacobi(m)?;
    let sigma_max = full.sigma.first().copied().unwrap_or(0.0);
    let cutoff = tol.cutoff(rows, cols, sigma_max);
    let rank = if sigma_max > 0.0 {
        full.sigma.iter().take_while(|&&s| s > cutoff).count()
    } else {
        0
    };
    Ok(truncate(m, full, rank))
}

/// Compact SVD keeping exactly the `rank` largest singular values (fewer if
/// some of them are exactly zero).
pub fn svd_at_rank(m: &Matrix, rank: usize) -> Result<SvdFactors> {
    let full = jacobi(m)?;
    let rank = full.sigma.iter().take(rank).take_while(|&&s| s > 0.0).count();
    Ok(truncate(m, full, rank))
}

fn truncate(m: &Matrix, full: JacobiSvd, rank: usize) -> SvdFactors {
    let (rows, cols) = m.shape();
    let mut left = Matrix::zeros(rows, rank);
    let mut right = Matrix::zeros(cols, rank);
    for k in 0..rank {
        let v = &full.right[k];
        let mut pivot = ZERO;
        let mut best = -1.0;
        for z in v {
            if z.norm() > best {
                best = z.norm();
                pivot = *z;
            }
        }
        let phase = if best > 0.0 { pivot.conj() / best } else { C64::new(1.0, 0.0) };
        for i in 0..cols {
            right[(i, k)] = v[i] * phase;
        }
        for i in 0..rows {
            left[(i, k)] = full.left[k][i] * phase;
        }
    }

    SvdFactors {
        left_vectors: left,
        singular_values: full.sigma[..rank].to_vec(),
        right_vectors: right,
        rank,
    }
}

/// Moore-Penrose pseudoinverse `right * diag(1/sigma) * left^*`.
pub fn pinv(m: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let f = svd(m, tol)?;
    Ok(pinv_from_factors(&f))
}

/// Pseudoinverse truncated to a prescribed rank. Used where the rank is
/// fixed by another operator (e.g. `S = T T^*` has the rank of `T`).
pub fn pinv_at_rank(m: &Matrix, rank: usize) -> Result<Matrix> {
    Ok(pinv_from_factors(&svd_at_rank(m, rank)?))
}

pub(crate) fn pinv_from_factors(f: &SvdFactors) -> Matrix {
    let (rows, cols) = (f.right_vectors.rows(), f.left_vectors.rows());
    let inv: Vec<f64> = f.singular_values.iter().map(|s| 1.0 / s).collect();
    Matrix::from_fn(rows, cols, |i, j| {
        (0..f.rank)
            .map(|k| f.right_vectors[(i, k)] * inv[k] * f.left_vectors[(j, k)].conj())
            .sum()
    })
}

/// `basis * diag(sigma^-2) * basis^*`, the pseudoinverse of `M M^*` (taking
/// the left factors of `M`) or of `M^* M` (taking the right ones).
pub(crate) fn inverse_square_from_factors(basis: &Matrix, sigma: &[f64]) -> Matrix {
    let inv: Vec<f64> = sigma.iter().map(|s| 1.0 / (s * s)).collect();
    let n = basis.rows();
    Matrix::from_fn(n, n, |i, j| {
        inv.iter()
            .enumerate()
            .map(|(k, w)| basis[(i, k)] * *w * basis[(j, k)].conj())
            .sum()
    })
}

/// Orthogonal projector onto the column space, `M M^dagger = left * left^*`.
pub fn range_projector(m: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let f = svd(m, tol)?;
    Ok(projector_from_basis(&f.left_vectors))
}

pub(crate) fn projector_from_basis(basis: &Matrix) -> Matrix {
    basis.matmul(&basis.adjoint())
}

/// Operator 2-norm (largest singular value); zero for the zero matrix.
pub fn op_norm(m: &Matrix) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

pub fn numerical_rank(m: &Matrix, tol: &Tolerance) -> Result<usize> {
    Ok(svd(m, tol)?.rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{real_vec, ONE};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn svd_of_diag_with_zero() {
        let f = svd(&Matrix::from_real_diag(&[3.0, 0.0]), &tol()).unwrap();
        assert_eq!(f.rank, 1);
        assert!((f.singular_values[0] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn svd_of_identity() {
        let f = svd(&Matrix::identity(4), &tol()).unwrap();
        assert_eq!(f.rank, 4);
        for s in &f.singular_values {
            assert!((s - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn svd_of_ones_column() {
        let m = Matrix::from_columns(2, &[real_vec(&[1.0, 1.0])]).unwrap();
        let f = svd(&m, &tol()).unwrap();
        assert_eq!(f.rank, 1);
        assert!((f.singular_values[0] - 2f64.sqrt()).abs() < 1e-15);
        // sign convention: the 1x1 right vector is real positive
        assert!((f.right_vectors[(0, 0)] - ONE).norm() < 1e-15);
    }

    #[test]
    fn pinv_examples() {
        let p = pinv(&Matrix::from_real_diag(&[2.0, 0.0]), &tol()).unwrap();
        assert!(p.max_abs_diff(&Matrix::from_real_diag(&[0.5, 0.0])) < 1e-15);

        let p = pinv(&Matrix::identity(3), &tol()).unwrap();
        assert!(p.max_abs_diff(&Matrix::identity(3)) < 1e-15);

        let col = Matrix::from_columns(2, &[real_vec(&[1.0, 1.0])]).unwrap();
        let p = pinv(&col, &tol()).unwrap();
        assert_eq!(p.shape(), (1, 2));
        let expected = Matrix::from_real_rows(&[&[0.5, 0.5]]).unwrap();
        assert!(p.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn pinv_of_zero_has_transposed_shape() {
        let p = pinv(&Matrix::zeros(2, 3), &tol()).unwrap();
        assert_eq!(p, Matrix::zeros(3, 2));
    }

    #[test]
    fn range_projector_examples() {
        let m = Matrix::from_columns(3, &[real_vec(&[1.0, 0.0, 0.0]), real_vec(&[0.0, 1.0, 0.0])])
            .unwrap();
        let p = range_projector(&m, &tol()).unwrap();
        assert!(p.max_abs_diff(&Matrix::from_real_diag(&[1.0, 1.0, 0.0])) < 1e-15);

        assert_eq!(range_projector(&Matrix::zeros(3, 3), &tol()).unwrap(), Matrix::zeros(3, 3));

        let col = Matrix::from_columns(2, &[real_vec(&[1.0, 1.0])]).unwrap();
        let p = range_projector(&col, &tol()).unwrap();
        let expected = Matrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        assert!(p.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn op_norm_examples() {
        assert!((op_norm(&Matrix::from_real_diag(&[1.0, 3.0])).unwrap() - 3.0).abs() < 1e-15);
        assert_eq!(op_norm(&Matrix::zeros(2, 4)).unwrap(), 0.0);
        let m = Matrix::from_real_rows(&[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]]).unwrap();
        assert!((op_norm(&m).unwrap() - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn numerical_rank_examples() {
        assert_eq!(numerical_rank(&Matrix::identity(5), &tol()).unwrap(), 5);
        assert_eq!(numerical_rank(&Matrix::zeros(4, 4), &tol()).unwrap(), 0);
        let m = Matrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(numerical_rank(&m, &tol()).unwrap(), 1);
    }

    #[test]
    fn rejects_non_finite() {
        let m = Matrix::from_fn(1, 1, |_, _| C64::new(f64::INFINITY, 0.0));
        assert_eq!(svd(&m, &tol()), Err(Error::NonFinite("svd input")));
    }

    #[test]
    fn wide_complex_matrix_reconstructs() {
        let i = C64::new(0.0, 1.0);
        let m = Matrix::from_rows(&[
            vec![ONE, i, C64::new(2.0, -1.0)],
            vec![-i, C64::new(0.5, 0.5), ONE],
        ])
        .unwrap();
        let f = svd(&m, &tol()).unwrap();
        assert_eq!(f.rank, 2);
        assert!(f.reconstruct().max_abs_diff(&m) < 1e-14);
        let ul = f.left_vectors.adjoint().matmul(&f.left_vectors);
        let vr = f.right_vectors.adjoint().matmul(&f.right_vectors);
        assert!(ul.max_abs_diff(&Matrix::identity(2)) < 1e-14);
        assert!(vr.max_abs_diff(&Matrix::identity(2)) < 1e-14);
    }
}
