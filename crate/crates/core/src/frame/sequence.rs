use crate::error::{Error, Result};
use crate::matrix::{Matrix, C64};

/// An ordered, finite list of vectors `f_1 .. f_m` in `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSequence {
    ambient_dim: usize,
    vectors: Vec<Vec<C64>>,
}

impl FrameSequence {
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if vectors.is_empty() {
            return Err(Error::EmptySequence);
        }
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "frame vector",
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            if !v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite("frame vector"));
            }
        }
        Ok(Self {
            ambient_dim,
            vectors,
        })
    }

    /// Real vectors embedded with zero imaginary parts.
    pub fn from_real(ambient_dim: usize, vectors: &[&[f64]]) -> Result<Self> {
        Self::new(
            ambient_dim,
            vectors.iter().map(|v| crate::matrix::real_vec(v)).collect(),
        )
    }

    /// The columns of `t` as a frame sequence.
    pub fn from_synthesis(t: &Matrix) -> Result<Self> {
        Self::new(t.rows(), t.columns())
    }

    /// Keeps the first `keep` vectors of a possibly unbounded sequence.
    ///
    /// `tail_energy` is the caller's figure for `sum_{k > keep} |f_k|^2`; it is
    /// carried along unchanged and nothing is claimed about convergence.
    pub fn truncate<I>(ambient_dim: usize, vectors: I, keep: usize, tail_energy: f64) -> Result<Truncated>
    where
        I: IntoIterator<Item = Vec<C64>>,
    {
        if !(tail_energy.is_finite() && tail_energy >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tail energy must be finite and nonnegative, got {tail_energy}"
            )));
        }
        let kept = vectors.into_iter().take(keep).collect();
        Ok(Truncated {
            sequence: Self::new(ambient_dim, kept)?,
            tail_energy,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of vectors `m`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &[C64] {
        &self.vectors[k]
    }

    pub fn into_vectors(self) -> Vec<Vec<C64>> {
        self.vectors
    }

    /// The synthesis operator `T` (`n x m`); column `k` is `f_k`.
    pub fn synthesis(&self) -> Matrix {
        let (n, m) = (self.ambient_dim, self.vectors.len());
        Matrix::from_fn(n, m, |i, k| self.vectors[k][i])
    }
}

/// A finite head of an infinite sequence together with the caller-supplied
/// energy of the discarded tail.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncated {
    pub sequence: FrameSequence,
    pub tail_energy: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::real_vec;

    #[test]
    fn rejects_empty_and_ragged() {
        assert_eq!(FrameSequence::new(2, vec![]), Err(Error::EmptySequence));
        assert_eq!(FrameSequence::new(0, vec![vec![]]), Err(Error::ZeroDimension));
        assert!(matches!(
            FrameSequence::new(2, vec![real_vec(&[1.0, 0.0]), real_vec(&[1.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            FrameSequence::from_real(1, &[&[f64::NAN]]),
            Err(Error::NonFinite("frame vector"))
        );
    }

    #[test]
    fn all_zero_sequence_is_accepted() {
        assert!(FrameSequence::from_real(2, &[&[0.0, 0.0], &[0.0, 0.0]]).is_ok());
    }

    #[test]
    fn synthesis_columns_are_vectors() {
        let f = FrameSequence::from_real(2, &[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]).unwrap();
        let t = f.synthesis();
        assert_eq!(t.shape(), (2, 3));
        assert_eq!(t.columns(), f.vectors());
        assert_eq!(FrameSequence::from_synthesis(&t).unwrap(), f);
    }

    #[test]
    fn truncation_of_unbounded_sequence() {
        // f_k = 2^{-k} e_1, k >= 0
        let seq = (0..).map(|k| real_vec(&[0.5f64.powi(k), 0.0]));
        let tail: f64 = (3..60).map(|k| 0.25f64.powi(k)).sum();
        let t = FrameSequence::truncate(2, seq, 3, tail).unwrap();
        assert_eq!(t.sequence.len(), 3);
        assert_eq!(t.tail_energy, tail);
        assert!(FrameSequence::truncate(2, std::iter::empty(), 3, -1.0).is_err());
    }
}
