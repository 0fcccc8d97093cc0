//! Eigen-free estimate of the frame bounds.
//!
//! The estimate never touches an SVD or eigensolver: an orthonormal basis of
//! `V` comes from Gram-Schmidt on the frame vectors, and every evaluated
//! point is scored by the frame sum `sum_k |<f, f_k>|^2` of a unit `f`.
//!
//! Half of the budget is spent on points drawn uniformly from the unit sphere
//! of `V`. The rest alternates between pushing the current lowest and highest
//! points further, by inverse and power iteration respectively on the `r x r`
//! matrix of the quadratic form in the Gram-Schmidt coordinates (inverted by
//! Gauss-Jordan elimination). Each iterate is scored like any other sample,
//! so the iteration only chooses where to look. Plain uniform sampling cannot
//! approach the bounds once `dim V` grows past a few, because the mass near an
//! extreme eigenvector shrinks geometrically; random two-dimensional searches
//! stall once `B / A` is large.
//!
//! If the quadratic form cannot be inverted the lower chain falls back to
//! exact minimization over the plane spanned by the current point and a fresh
//! uniform one.

use super::generate::FrameRng;
use crate::frame::FrameSequence;
use crate::matrix::{self, Matrix, C64, ZERO};

/// Relative residual below which Gram-Schmidt treats a vector as dependent.
const BASIS_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct RayleighEnvelope {
    pub samples: usize,
    /// Dimension of `V` found by Gram-Schmidt.
    pub basis_dim: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

/// Orthonormal basis of `span{f_k}` by modified Gram-Schmidt with one pass of
/// reorthogonalization.
pub fn gram_schmidt_basis(frame: &FrameSequence) -> Vec<Vec<C64>> {
    let scale = frame
        .vectors()
        .iter()
        .map(|v| matrix::norm(v))
        .fold(0.0, f64::max);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    if scale == 0.0 {
        return basis;
    }
    for v in frame.vectors() {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let proj = matrix::inner(&w, b);
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = matrix::norm(&w);
        if nrm > BASIS_CUTOFF * scale {
            basis.push(w.into_iter().map(|z| z / nrm).collect());
        }
    }
    basis
}

struct Sampler<'a> {
    frame: &'a FrameSequence,
    basis: Vec<Vec<C64>>,
    rng: &'a mut FrameRng,
    used: usize,
    min: (f64, Vec<C64>),
    max: (f64, Vec<C64>),
    /// Coordinates of the current iterate of each chain.
    low_chain: Vec<C64>,
    high_chain: Vec<C64>,
}

impl Sampler<'_> {
    fn analysis(&self, f: &[C64]) -> Vec<C64> {
        self.frame.vectors().iter().map(|fk| matrix::inner(f, fk)).collect()
    }

    fn point(&self, coords: &[C64]) -> Vec<C64> {
        let mut f = vec![ZERO; self.frame.ambient_dim()];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (x, y) in f.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        let nrm = matrix::norm(&f);
        f.into_iter().map(|z| z / nrm).collect()
    }

    fn uniform_point(&mut self) -> Vec<C64> {
        let coords = self.rng.complex_vec(self.basis.len());
        self.point(&coords)
    }

    /// Coordinates of `f` in the orthonormal basis.
    fn coords(&self, f: &[C64]) -> Vec<C64> {
        self.basis.iter().map(|b| matrix::inner(f, b)).collect()
    }

    /// One step of a chain: `x <- normalize(op x)`, scored.
    fn iterate(&mut self, op: &Matrix, lowest: bool) {
        let x = if lowest { &self.low_chain } else { &self.high_chain };
        let y = op.mul_vec(x);
        let nrm = matrix::norm(&y);
        if !(nrm.is_finite() && nrm > 0.0) {
            let f = self.uniform_point();
            self.score(f);
            return;
        }
        let y: Vec<C64> = y.into_iter().map(|z| z / nrm).collect();
        let f = self.point(&y);
        self.score(f);
        if lowest {
            self.low_chain = y;
        } else {
            self.high_chain = y;
        }
    }

    /// Scores a unit vector and updates the envelope.
    fn score(&mut self, f: Vec<C64>) -> f64 {
        self.used += 1;
        let ratio = matrix::norm_sqr(&self.analysis(&f)) / matrix::norm_sqr(&f);
        if ratio < self.min.0 {
            self.min = (ratio, f.clone());
        }
        if ratio > self.max.0 {
            self.max = (ratio, f);
        }
        ratio
    }

    /// Moves the current extreme to the best point on span{x, g}.
    fn refine(&mut self, lowest: bool) {
        let x = if lowest { self.min.1.clone() } else { self.max.1.clone() };
        let mut g = self.uniform_point();
        self.score(g.clone());
        let proj = matrix::inner(&g, &x);
        for (gi, xi) in g.iter_mut().zip(&x) {
            *gi -= proj * xi;
        }
        let gn = matrix::norm(&g);
        if gn < 1e-12 {
            return;
        }
        g.iter_mut().for_each(|z| *z /= gn);

        let (a, b) = (self.analysis(&x), self.analysis(&g));
        let p = matrix::norm_sqr(&a);
        let q = matrix::norm_sqr(&b);
        let w = matrix::inner(&b, &a);
        let mid = 0.5 * (p + q);
        let rad = (0.25 * (p - q) * (p - q) + w.norm_sqr()).sqrt();
        let lambda = if lowest { mid - rad } else { mid + rad };
        let c1 = (w, C64::new(lambda - p, 0.0));
        let c2 = (C64::new(lambda - q, 0.0), w.conj());
        let n1 = c1.0.norm_sqr() + c1.1.norm_sqr();
        let n2 = c2.0.norm_sqr() + c2.1.norm_sqr();
        let (alpha, beta) = if n1 >= n2 { c1 } else { c2 };
        if n1.max(n2) == 0.0 {
            return;
        }
        let y: Vec<C64> = x.iter().zip(&g).map(|(xi, gi)| alpha * xi + beta * gi).collect();
        let yn = matrix::norm(&y);
        self.score(y.into_iter().map(|z| z / yn).collect());
    }
}

/// Lowest and highest `sum_k |<f, f_k>|^2` over `samples` unit vectors of `V`.
///
/// Returns `None` when the sequence spans only the zero vector.
pub fn rayleigh_envelope(
    frame: &FrameSequence,
    samples: usize,
    rng: &mut FrameRng,
) -> Option<RayleighEnvelope> {
    let basis = gram_schmidt_basis(frame);
    if basis.is_empty() || samples == 0 {
        return None;
    }
    let basis_dim = basis.len();
    let mut s = Sampler {
        frame,
        basis,
        rng,
        used: 0,
        min: (f64::INFINITY, Vec::new()),
        max: (f64::NEG_INFINITY, Vec::new()),
        low_chain: Vec::new(),
        high_chain: Vec::new(),
    };
    let uniform = samples.div_ceil(2);
    for _ in 0..uniform {
        let f = s.uniform_point();
        s.score(f);
    }
    s.low_chain = s.coords(&s.min.1);
    s.high_chain = s.coords(&s.max.1);

    // quadratic form in basis coordinates: c_{k i} = <b_i, f_k>, form = c^* c
    let c = Matrix::from_fn(frame.len(), basis_dim, |k, i| {
        matrix::inner(&s.basis[i], frame.vector(k))
    });
    let form = &c.adjoint() * &c;
    let form_inv = form.inverse();
    let mut lowest = true;
    while s.used < samples {
        match (&form_inv, lowest) {
            (Some(inv), true) => s.iterate(inv, true),
            (None, true) if s.used + 2 <= samples => s.refine(true),
            (None, true) => {
                let f = s.uniform_point();
                s.score(f);
            }
            (_, false) => s.iterate(&form, false),
        }
        lowest = !lowest;
    }
    Some(RayleighEnvelope {
        samples: s.used,
        basis_dim,
        min_ratio: s.min.0,
        max_ratio: s.max.0,
    })
}
