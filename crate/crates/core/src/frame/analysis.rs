use serde::Serialize;

use super::{FrameSequence, OperatorBundle};
use crate::error::{Error, Result};
use crate::matrix::{self, svd, Matrix, SvdFactors, Tolerance};

/// Optimal frame bounds `A = |T^dagger|^-2`, `B = |T|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub tight: bool,
    pub parseval: bool,
}

impl FrameBounds {
    /// Bounds from the kept singular values of `T`; `None` when the span is zero.
    pub fn from_singular_values(sigma: &[f64], tol: &Tolerance) -> Option<Self> {
        let (first, last) = (sigma.first()?, sigma.last()?);
        Some(Self::new(last * last, first * first, tol))
    }

    pub fn new(lower: f64, upper: f64, tol: &Tolerance) -> Self {
        let tight = upper / lower - 1.0 <= tol.tightness_rel;
        let parseval = tight && (lower - 1.0).abs() <= tol.tightness_rel;
        Self {
            lower,
            upper,
            tight,
            parseval,
        }
    }

    /// `B / A`, the condition number of the frame operator on `V`.
    pub fn ratio(&self) -> f64 {
        self.upper / self.lower
    }

    /// Bounds of the canonical dual, `(1/B, 1/A)`.
    pub fn dual(&self, tol: &Tolerance) -> Self {
        Self::new(1.0 / self.upper, 1.0 / self.lower, tol)
    }
}

/// Structural verdict on a frame sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameClassification {
    /// `span{f_k}` is the whole space (`T` surjective).
    pub is_frame_for_h: bool,
    /// `T` is injective (`Q = I`).
    pub is_riesz_basis: bool,
    pub is_tight: bool,
    pub is_parseval: bool,
    pub is_degenerate: bool,
    pub span_dim: usize,
    pub ambient_dim: usize,
    pub len: usize,
    /// `m / span_dim`; absent when the span is zero.
    pub redundancy: Option<f64>,
    pub bounds: Option<FrameBounds>,
    /// `max_k |P f_k - f_k|`: every vector lies in the range of `T`.
    pub range_defect: f64,
}

impl FrameClassification {
    fn from_factors(frame: &FrameSequence, t_svd: &SvdFactors, tol: &Tolerance) -> Self {
        let (n, m) = (frame.ambient_dim(), frame.len());
        let r = t_svd.rank;
        let bounds = FrameBounds::from_singular_values(&t_svd.singular_values, tol);
        let p = matrix::projector_from_basis(&t_svd.left_vectors);
        let range_defect = frame
            .vectors()
            .iter()
            .map(|f| matrix::norm(&matrix::sub_vec(&p.mul_vec(f), f)))
            .fold(0.0, f64::max);
        Self {
            is_frame_for_h: r == n,
            is_riesz_basis: r == m,
            is_tight: bounds.is_some_and(|b| b.tight),
            is_parseval: bounds.is_some_and(|b| b.parseval),
            is_degenerate: r == 0,
            span_dim: r,
            ambient_dim: n,
            len: m,
            redundancy: (r > 0).then(|| m as f64 / r as f64),
            bounds,
            range_defect,
        }
    }
}

/// `T` restricted to `V`, expressed in the coordinates of an orthonormal
/// basis `W` of `V`. Left-multiplication by `W` is the inclusion of `V`.
#[derive(Debug, Clone)]
pub struct RestrictedOperators {
    /// `n x r`, orthonormal columns spanning `V`.
    pub basis: Matrix,
    /// `W^* T`, `r x m`.
    pub t_res: Matrix,
    /// `U W`, `m x r`.
    pub u_res: Matrix,
    /// `W^* S W`, `r x r`, Hermitian positive definite.
    pub s_res: Matrix,
    pub s_res_inv: Matrix,
}

impl OperatorBundle {
    pub fn frame_bounds(&self) -> Result<FrameBounds> {
        FrameBounds::from_singular_values(&self.t_svd.singular_values, &self.tol)
            .ok_or(Error::DegenerateSpan)
    }

    pub fn restricted(&self) -> Result<RestrictedOperators> {
        if self.span_dim() == 0 {
            return Err(Error::DegenerateSpan);
        }
        let w = self.span_basis().clone();
        let wa = w.adjoint();
        let t_res = &wa * &self.t;
        let u_res = &self.u * &w;
        let s_res = &t_res * &u_res;
        let s_res_inv = s_res.inverse().ok_or(Error::DegenerateSpan)?;
        Ok(RestrictedOperators {
            basis: w,
            t_res,
            u_res,
            s_res,
            s_res_inv,
        })
    }

    /// Vectors `S^dagger f_k` of the canonical dual, read off as the columns
    /// of `(T^dagger)^* = S^dagger T`; the product form loses accuracy as the
    /// square of the condition number.
    pub fn canonical_dual(&self) -> Result<FrameSequence> {
        if self.span_dim() == 0 {
            return Err(Error::DegenerateSpan);
        }
        FrameSequence::from_synthesis(&self.t_pinv.adjoint())
    }

    /// `S^dagger`, via `(1/A) P` when the sequence is tight.
    pub fn pseudo_frame_operator(&self) -> Result<Matrix> {
        let b = self.frame_bounds()?;
        Ok(if b.tight {
            self.p.scale_real(1.0 / b.lower)
        } else {
            self.s_pinv.clone()
        })
    }

    /// `G^dagger`, via `(1/A) Q` when the sequence is tight.
    pub fn pseudo_gram(&self) -> Result<Matrix> {
        let b = self.frame_bounds()?;
        Ok(if b.tight {
            self.q.scale_real(1.0 / b.lower)
        } else {
            self.g_pinv.clone()
        })
    }
}

pub fn frame_bounds(frame: &FrameSequence, tol: &Tolerance) -> Result<FrameBounds> {
    let f = svd(&frame.synthesis(), tol)?;
    FrameBounds::from_singular_values(&f.singular_values, tol).ok_or(Error::DegenerateSpan)
}

pub fn classify(frame: &FrameSequence, tol: &Tolerance) -> Result<FrameClassification> {
    let f = svd(&frame.synthesis(), tol)?;
    Ok(FrameClassification::from_factors(frame, &f, tol))
}

pub fn canonical_dual(frame: &FrameSequence, tol: &Tolerance) -> Result<FrameSequence> {
    let t = frame.synthesis();
    let f = svd(&t, tol)?;
    if f.rank == 0 {
        return Err(Error::DegenerateSpan);
    }
    FrameSequence::from_synthesis(&matrix::pinv_from_factors(&f).adjoint())
}

pub fn restricted(frame: &FrameSequence, tol: &Tolerance) -> Result<RestrictedOperators> {
    OperatorBundle::build(frame, tol)?.restricted()
}

pub fn pseudo_frame_operator(frame: &FrameSequence, tol: &Tolerance) -> Result<Matrix> {
    OperatorBundle::build(frame, tol)?.pseudo_frame_operator()
}

pub fn pseudo_gram(frame: &FrameSequence, tol: &Tolerance) -> Result<Matrix> {
    OperatorBundle::build(frame, tol)?.pseudo_gram()
}
