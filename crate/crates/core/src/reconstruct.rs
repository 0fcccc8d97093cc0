//! Minimum-norm analysis and synthesis, and the series forms of `P` and `Q`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{FrameSequence, OperatorBundle};
use crate::matrix::{self, Tolerance, C64};

/// An element of the coefficient space `C^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector(Vec<C64>);

impl CoefficientVector {
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("coefficients"));
        }
        Ok(Self(entries))
    }

    pub fn zeros(m: usize) -> Self {
        Self(vec![matrix::ZERO; m])
    }

    /// Standard basis element `e_k` of `C^m`.
    pub fn unit(m: usize, k: usize) -> Self {
        Self(matrix::unit_vec(m, k))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<C64> {
        self.0
    }
}

impl AsRef<[C64]> for CoefficientVector {
    fn as_ref(&self) -> &[C64] {
        &self.0
    }
}

/// Minimum-norm solution together with how far the input was from the
/// relevant subspace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinNormSolution {
    pub solution: Vec<C64>,
    /// `|f - P f|` for analysis, `|c - Q c|` for synthesis.
    pub residual_norm: f64,
    /// `(|x_0|^2, |x - x_0|^2)` where `x` is the input and `x_0` its projection.
    pub norm_split: (f64, f64),
}

impl MinNormSolution {
    /// `(|x_0|^2, |x - x_0|^2)` for another solution `x` of the same system.
    pub fn split_against(&self, other: &[C64]) -> (f64, f64) {
        (
            matrix::norm_sqr(&self.solution),
            matrix::norm_sqr(&matrix::sub_vec(other, &self.solution)),
        )
    }
}

/// A series evaluation and its distance from the projector matrix route.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesProjection {
    pub value: Vec<C64>,
    /// Max entrywise difference between the series value and the matrix product.
    pub deviation: f64,
}

fn require_span(b: &OperatorBundle) -> Result<()> {
    if b.span_dim() == 0 {
        return Err(Error::DegenerateSpan);
    }
    Ok(())
}

fn check_len(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        });
    }
    Ok(())
}

impl OperatorBundle {
    /// `c_0 = (<f, S^dagger f_k>)_k`, the shortest `c` with `T c = P f`.
    pub fn min_norm_coefficients(&self, f: &[C64]) -> Result<MinNormSolution> {
        check_len("signal", self.ambient_dim(), f.len())?;
        require_span(self)?;
        let sf = self.s_pinv.mul_vec(f);
        // S^dagger is self-adjoint, so <f, S^dagger f_k> = <S^dagger f, f_k>.
        let solution = (0..self.len())
            .map(|k| {
                (0..self.ambient_dim())
                    .map(|i| sf[i] * self.t[(i, k)].conj())
                    .sum()
            })
            .collect();
        let pf = self.p.mul_vec(f);
        let perp = matrix::sub_vec(f, &pf);
        Ok(MinNormSolution {
            solution,
            residual_norm: matrix::norm(&perp),
            norm_split: (matrix::norm_sqr(&pf), matrix::norm_sqr(&perp)),
        })
    }

    /// `f_0 = S^dagger T c`, the shortest `f` with `U f = Q c`.
    pub fn min_norm_preimage(&self, c: &[C64]) -> Result<MinNormSolution> {
        check_len("coefficients", self.len(), c.len())?;
        require_span(self)?;
        let solution = self.s_pinv.mul_vec(&self.t.mul_vec(c));
        let qc = self.q.mul_vec(c);
        let perp = matrix::sub_vec(c, &qc);
        Ok(MinNormSolution {
            solution,
            residual_norm: matrix::norm(&perp),
            norm_split: (matrix::norm_sqr(&qc), matrix::norm_sqr(&perp)),
        })
    }

    /// `P f = sum_k <f, S^dagger f_k> f_k`, summed in index order.
    pub fn project_signal(&self, f: &[C64]) -> Result<SeriesProjection> {
        check_len("signal", self.ambient_dim(), f.len())?;
        let n = self.ambient_dim();
        let mut value = vec![matrix::ZERO; n];
        for k in 0..self.len() {
            let fk = self.t.column(k);
            let dual_k = self.s_pinv.mul_vec(&fk);
            let coeff = matrix::inner(f, &dual_k);
            for (v, x) in value.iter_mut().zip(&fk) {
                *v += coeff * x;
            }
        }
        let deviation = matrix::max_abs_diff_vec(&value, &self.p.mul_vec(f));
        Ok(SeriesProjection { value, deviation })
    }

    /// `Q c = sum_k <c, G^dagger T^* f_k> e_k`.
    pub fn project_coefficients(&self, c: &[C64]) -> Result<SeriesProjection> {
        check_len("coefficients", self.len(), c.len())?;
        let value: Vec<C64> = (0..self.len())
            .map(|k| {
                let analysed = self.u.mul_vec(&self.t.column(k));
                matrix::inner(c, &self.g_pinv.mul_vec(&analysed))
            })
            .collect();
        let deviation = matrix::max_abs_diff_vec(&value, &self.q.mul_vec(c));
        Ok(SeriesProjection { value, deviation })
    }
}

pub fn min_norm_coefficients(
    frame: &FrameSequence,
    f: &[C64],
    tol: &Tolerance,
) -> Result<MinNormSolution> {
    check_len("signal", frame.ambient_dim(), f.len())?;
    OperatorBundle::build(frame, tol)?.min_norm_coefficients(f)
}

pub fn min_norm_preimage(
    frame: &FrameSequence,
    c: &CoefficientVector,
    tol: &Tolerance,
) -> Result<MinNormSolution> {
    check_len("coefficients", frame.len(), c.len())?;
    OperatorBundle::build(frame, tol)?.min_norm_preimage(c.as_slice())
}

pub fn project_signal(frame: &FrameSequence, f: &[C64], tol: &Tolerance) -> Result<SeriesProjection> {
    check_len("signal", frame.ambient_dim(), f.len())?;
    OperatorBundle::build(frame, tol)?.project_signal(f)
}

pub fn project_coefficients(
    frame: &FrameSequence,
    c: &CoefficientVector,
    tol: &Tolerance,
) -> Result<CoefficientVector> {
    check_len("coefficients", frame.len(), c.len())?;
    let p = OperatorBundle::build(frame, tol)?.project_coefficients(c.as_slice())?;
    CoefficientVector::new(p.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::real_vec;

    const EPS: f64 = 1e-14;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn doubled_e1() -> FrameSequence {
        FrameSequence::from_real(2, &[&[1.0, 0.0], &[1.0, 0.0]]).unwrap()
    }

    fn e12_in_c3() -> FrameSequence {
        FrameSequence::from_real(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap()
    }

    fn near(a: &[C64], b: &[C64]) -> bool {
        matrix::max_abs_diff_vec(a, b) < EPS
    }

    /// Minimises |c|^2 over the line c_1 + c_2 = 1 by scanning.
    fn brute_force_line_minimum() -> (f64, f64) {
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..=200_000 {
            let c1 = -1.0 + 3.0 * i as f64 / 200_000.0;
            let c2 = 1.0 - c1;
            let nrm = c1 * c1 + c2 * c2;
            if nrm < best.0 {
                best = (nrm, c1);
            }
        }
        (best.1, 1.0 - best.1)
    }

    #[test]
    fn min_norm_coefficients_repeated_vector() {
        let (c1, c2) = brute_force_line_minimum();
        assert!((c1 - 0.5).abs() < 1e-4 && (c2 - 0.5).abs() < 1e-4);
        let sol = min_norm_coefficients(&doubled_e1(), &real_vec(&[1.0, 0.0]), &tol()).unwrap();
        assert!(near(&sol.solution, &real_vec(&[0.5, 0.5])));
        assert!(sol.residual_norm < EPS);
    }

    #[test]
    fn min_norm_coefficients_orthonormal() {
        let f = real_vec(&[0.3, -1.2, 0.0]);
        let sol = min_norm_coefficients(&e12_in_c3(), &f, &tol()).unwrap();
        assert!(near(&sol.solution, &real_vec(&[0.3, -1.2])));
    }

    #[test]
    fn min_norm_coefficients_orthogonal_signal() {
        let f = real_vec(&[0.0, 0.0, 2.0]);
        let sol = min_norm_coefficients(&e12_in_c3(), &f, &tol()).unwrap();
        assert!(near(&sol.solution, &real_vec(&[0.0, 0.0])));
        assert!((sol.residual_norm - 2.0).abs() < EPS);
        assert_eq!(sol.norm_split, (0.0, 4.0));
    }

    #[test]
    fn min_norm_preimage_examples() {
        let c = CoefficientVector::new(real_vec(&[1.0, 0.0])).unwrap();
        let sol = min_norm_preimage(&doubled_e1(), &c, &tol()).unwrap();
        assert!(near(&sol.solution, &real_vec(&[0.5, 0.0])));

        let sol = min_norm_preimage(&doubled_e1(), &CoefficientVector::zeros(2), &tol()).unwrap();
        assert!(near(&sol.solution, &real_vec(&[0.0, 0.0])));

        let f = e12_in_c3();
        for k in 0..2 {
            let sol = min_norm_preimage(&f, &CoefficientVector::unit(2, k), &tol()).unwrap();
            assert!(near(&sol.solution, f.vector(k)));
        }
    }

    #[test]
    fn project_signal_examples() {
        let p = project_signal(&e12_in_c3(), &real_vec(&[1.0, 2.0, 3.0]), &tol()).unwrap();
        assert!(near(&p.value, &real_vec(&[1.0, 2.0, 0.0])));
        assert!(p.deviation < EPS);

        let inside = real_vec(&[-4.0, 0.5, 0.0]);
        assert!(near(&project_signal(&e12_in_c3(), &inside, &tol()).unwrap().value, &inside));

        let h = 3f64.sqrt() / 2.0;
        let mb = FrameSequence::from_real(2, &[&[0.0, 1.0], &[h, -0.5], &[-h, -0.5]]).unwrap();
        let p = project_signal(&mb, &real_vec(&[1.0, 0.0]), &tol()).unwrap();
        assert!(near(&p.value, &real_vec(&[1.0, 0.0])));
    }

    #[test]
    fn project_coefficients_examples() {
        let c = CoefficientVector::new(real_vec(&[1.0, 0.0])).unwrap();
        let q = project_coefficients(&doubled_e1(), &c, &tol()).unwrap();
        assert!(near(q.as_slice(), &real_vec(&[0.5, 0.5])));

        let inside = CoefficientVector::new(real_vec(&[2.0, 2.0])).unwrap();
        let q = project_coefficients(&doubled_e1(), &inside, &tol()).unwrap();
        assert!(near(q.as_slice(), inside.as_slice()));

        // Riesz basis: Q = I
        let c = CoefficientVector::new(vec![C64::new(1.0, -2.0), C64::new(0.0, 3.0)]).unwrap();
        let q = project_coefficients(&e12_in_c3(), &c, &tol()).unwrap();
        assert!(near(q.as_slice(), c.as_slice()));
    }

    #[test]
    fn dimension_and_degeneracy_errors() {
        assert!(matches!(
            min_norm_coefficients(&doubled_e1(), &real_vec(&[1.0]), &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            min_norm_preimage(&doubled_e1(), &CoefficientVector::zeros(3), &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
        let zero = FrameSequence::from_real(2, &[&[0.0, 0.0]]).unwrap();
        assert_eq!(
            min_norm_coefficients(&zero, &real_vec(&[1.0, 0.0]), &tol()),
            Err(Error::DegenerateSpan)
        );
        assert!(CoefficientVector::new(vec![C64::new(f64::NAN, 0.0)]).is_err());
    }
}
