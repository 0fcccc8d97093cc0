use super::FrameSequence;
use crate::error::Result;
use crate::matrix::{
    inverse_square_from_factors, pinv_from_factors, projector_from_basis, range_projector, svd, Matrix,
    SvdFactors, Tolerance,
};

/// Every operator attached to a frame sequence, materialized as dense
/// matrices. Field names follow the usual frame notation.
#[derive(Debug, Clone)]
pub struct OperatorBundle {
    /// Synthesis operator, `n x m`.
    pub t: Matrix,
    /// Analysis operator `T^*`, `m x n`.
    pub u: Matrix,
    /// Frame operator `T T^*`, `n x n`.
    pub s: Matrix,
    /// Gram matrix `T^* T`, `m x m`.
    pub g: Matrix,
    /// Orthogonal projector onto `span{f_k}`.
    pub p: Matrix,
    /// Orthogonal projector onto the range of `T^*`.
    pub q: Matrix,
    pub t_pinv: Matrix,
    pub s_pinv: Matrix,
    pub g_pinv: Matrix,
    pub tol: Tolerance,
    /// Compact SVD of `T`.
    pub t_svd: SvdFactors,
}

impl OperatorBundle {
    /// `S^dagger` and `G^dagger` come from the SVD of `T` rather than from
    /// factoring `S` and `G`, whose condition numbers are the square of `T`'s.
    pub fn build(frame: &FrameSequence, tol: &Tolerance) -> Result<Self> {
        let t = frame.synthesis();
        let u = t.adjoint();
        let s = &t * &u;
        let g = &u * &t;
        let t_svd = svd(&t, tol)?;
        let p = projector_from_basis(&t_svd.left_vectors);
        let q = range_projector(&u, tol)?;
        let t_pinv = pinv_from_factors(&t_svd);
        let s_pinv = inverse_square_from_factors(&t_svd.left_vectors, &t_svd.singular_values);
        let g_pinv = inverse_square_from_factors(&t_svd.right_vectors, &t_svd.singular_values);
        Ok(Self {
            t,
            u,
            s,
            g,
            p,
            q,
            t_pinv,
            s_pinv,
            g_pinv,
            tol: *tol,
            t_svd,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.t.rows()
    }

    pub fn len(&self) -> usize {
        self.t.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.t.cols() == 0
    }

    /// Dimension of `V = span{f_k}`.
    pub fn span_dim(&self) -> usize {
        self.t_svd.rank
    }

    /// Orthonormal basis `W` of `V` (left singular vectors of `T`).
    pub fn span_basis(&self) -> &Matrix {
        &self.t_svd.left_vectors
    }
}

pub fn build_bundle(frame: &FrameSequence, tol: &Tolerance) -> Result<OperatorBundle> {
    OperatorBundle::build(frame, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;

    const EPS: f64 = 1e-14;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn real(rows: &[&[f64]]) -> Matrix {
        Matrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn orthonormal_pair_in_c3() {
        let f = FrameSequence::from_real(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        let b = build_bundle(&f, &tol()).unwrap();
        let p = Matrix::from_real_diag(&[1.0, 1.0, 0.0]);
        assert!(b.p.max_abs_diff(&p) < EPS);
        assert!(b.q.max_abs_diff(&Matrix::identity(2)) < EPS);
        assert!(b.s.max_abs_diff(&p) < EPS);
        assert!(b.g.max_abs_diff(&Matrix::identity(2)) < EPS);
        assert_eq!(b.span_dim(), 2);
    }

    #[test]
    fn repeated_vector() {
        let f = FrameSequence::from_real(2, &[&[1.0, 0.0], &[1.0, 0.0]]).unwrap();
        let b = build_bundle(&f, &tol()).unwrap();
        assert!(b.g.max_abs_diff(&real(&[&[1.0, 1.0], &[1.0, 1.0]])) < EPS);
        assert!(b.q.max_abs_diff(&real(&[&[0.5, 0.5], &[0.5, 0.5]])) < EPS);
        assert!(b.g_pinv.max_abs_diff(&real(&[&[0.25, 0.25], &[0.25, 0.25]])) < EPS);
        assert!((&b.g * &b.g_pinv).max_abs_diff(&b.q) < EPS);
    }

    #[test]
    fn mercedes_benz_frame_operator() {
        let h = 3f64.sqrt() / 2.0;
        let f = FrameSequence::from_real(2, &[&[0.0, 1.0], &[h, -0.5], &[-h, -0.5]]).unwrap();
        let b = build_bundle(&f, &tol()).unwrap();
        assert!(b.s.max_abs_diff(&Matrix::identity(2).scale_real(1.5)) < EPS);
        assert!(b.p.max_abs_diff(&Matrix::identity(2)) < EPS);
    }

    #[test]
    fn analysis_is_exact_adjoint() {
        let i = C64::new(0.0, 1.0);
        let f = FrameSequence::new(2, vec![vec![i, C64::new(1.0, 2.0)], vec![C64::new(0.5, 0.0), -i]])
            .unwrap();
        let b = build_bundle(&f, &tol()).unwrap();
        assert_eq!(b.u, b.t.adjoint());
    }

    #[test]
    fn zero_sequence_has_zero_operators() {
        let f = FrameSequence::from_real(2, &[&[0.0, 0.0]]).unwrap();
        let b = build_bundle(&f, &tol()).unwrap();
        assert_eq!(b.span_dim(), 0);
        assert_eq!(b.p, Matrix::zeros(2, 2));
        assert_eq!(b.t_pinv, Matrix::zeros(1, 2));
        assert_eq!(b.s_pinv, Matrix::zeros(2, 2));
    }
}
