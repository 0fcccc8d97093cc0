//! Seeded random frame generators.
//!
//! The random source is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
//! Uniform doubles are `(x >> 11) * 2^-53` of the next 64-bit output (rand's
//! standard `f64`), standard normals use the cosine branch of Box-Muller on
//! `(1 - u1, u2)`, and a complex normal is `(z1 + i z2) / sqrt(2)`. All
//! entries are drawn in row-major order of the matrix being filled.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::FrameSequence;
use crate::matrix::{self, Matrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Gaussian,
    Tight,
    RankDeficient,
    Duplicated,
    IllConditioned,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::Gaussian,
        GeneratorKind::Tight,
        GeneratorKind::RankDeficient,
        GeneratorKind::Duplicated,
        GeneratorKind::IllConditioned,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Gaussian => "gaussian",
            GeneratorKind::Tight => "tight",
            GeneratorKind::RankDeficient => "rank_deficient",
            GeneratorKind::Duplicated => "duplicated",
            GeneratorKind::IllConditioned => "ill_conditioned",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown generator kind `{s}` (expected one of gaussian, tight, \
                     rank_deficient, duplicated, ill_conditioned)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub m: usize,
    /// Target `sigma_max / sigma_min` of `T`; only used by `IllConditioned`.
    pub condition_target: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, m: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            m,
            condition_target: 1.0,
            seed,
        }
    }

    pub fn with_condition(self, condition_target: f64) -> Self {
        Self {
            condition_target,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let infeasible = |msg: String| Err(Error::InfeasibleSpec(msg));
        if self.n == 0 || self.m == 0 {
            return infeasible(format!("n and m must be positive (n = {}, m = {})", self.n, self.m));
        }
        if !(self.condition_target.is_finite() && self.condition_target >= 1.0) {
            return infeasible(format!(
                "condition_target must be >= 1, got {}",
                self.condition_target
            ));
        }
        let r = self.n.min(self.m);
        match self.kind {
            GeneratorKind::RankDeficient if r < 2 => {
                infeasible(format!("rank_deficient needs min(n, m) >= 2 (n = {}, m = {})", self.n, self.m))
            }
            GeneratorKind::Duplicated if self.m < 2 => {
                infeasible("duplicated needs m >= 2".to_string())
            }
            GeneratorKind::IllConditioned if r == 1 && self.condition_target > 1.1 => infeasible(
                format!(
                    "ill_conditioned with min(n, m) = 1 cannot reach condition {}",
                    self.condition_target
                ),
            ),
            _ => Ok(()),
        }
    }
}

/// Documented, reproducible random source shared by the generators and the
/// identity suite.
#[derive(Debug, Clone)]
pub struct FrameRng(ChaCha8Rng);

impl FrameRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    /// Uniform integer in `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        self.0.random_range(0..bound)
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Circularly symmetric complex normal with `E|z|^2 = 1`.
    pub fn complex_normal(&mut self) -> C64 {
        let re = self.normal();
        let im = self.normal();
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn complex_vec(&mut self, len: usize) -> Vec<C64> {
        (0..len).map(|_| self.complex_normal()).collect()
    }

    /// `rows x cols` matrix of complex normals with variance `variance`.
    pub fn complex_matrix(&mut self, rows: usize, cols: usize, variance: f64) -> Matrix {
        let s = variance.sqrt();
        Matrix::from_fn(rows, cols, |_, _| self.complex_normal() * s)
    }

    /// Random `rows x cols` matrix with orthonormal columns (`cols <= rows`),
    /// by modified Gram-Schmidt applied twice to a Gaussian matrix.
    pub fn orthonormal_columns(&mut self, rows: usize, cols: usize) -> Matrix {
        assert!(cols <= rows, "orthonormal_columns: {cols} > {rows}");
        let z = self.complex_matrix(rows, cols, 1.0);
        let mut q: Vec<Vec<C64>> = z.columns();
        for j in 0..cols {
            for _ in 0..2 {
                for i in 0..j {
                    let proj = matrix::inner(&q[j], &q[i]);
                    let qi = q[i].clone();
                    for (x, y) in q[j].iter_mut().zip(&qi) {
                        *x -= proj * y;
                    }
                }
            }
            let nrm = matrix::norm(&q[j]);
            for x in q[j].iter_mut() {
                *x /= nrm;
            }
        }
        Matrix::from_columns(rows, &q).expect("finite by construction")
    }
}

/// Deterministic frame for `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<FrameSequence> {
    spec.validate()?;
    let (n, m) = (spec.n, spec.m);
    let mut rng = FrameRng::new(spec.seed);
    let t = match spec.kind {
        GeneratorKind::Gaussian => rng.complex_matrix(n, m, 1.0 / n as f64),
        GeneratorKind::Tight => {
            let bound = 0.5 + 1.5 * rng.uniform();
            let iso = if m >= n {
                rng.orthonormal_columns(m, n).adjoint()
            } else {
                rng.orthonormal_columns(n, m)
            };
            iso.scale_real(bound.sqrt())
        }
        GeneratorKind::RankDeficient => {
            let rank = 1 + rng.below(n.min(m) - 1);
            let x = rng.complex_matrix(n, rank, 1.0 / n as f64);
            let y = rng.complex_matrix(rank, m, 1.0 / rank as f64);
            &x * &y
        }
        GeneratorKind::Duplicated => {
            let distinct = m.div_ceil(2);
            let base = rng.complex_matrix(n, distinct, 1.0 / n as f64);
            Matrix::from_fn(n, m, |i, k| base[(i, k % distinct)])
        }
        GeneratorKind::IllConditioned => {
            let r = n.min(m);
            let left = rng.orthonormal_columns(n, r);
            let right = rng.orthonormal_columns(m, r);
            let sigma: Vec<f64> = (0..r)
                .map(|i| {
                    if r == 1 {
                        1.0
                    } else {
                        spec.condition_target.powf(-(i as f64) / (r - 1) as f64)
                    }
                })
                .collect();
            let scaled = Matrix::from_fn(n, r, |i, k| left[(i, k)] * sigma[k]);
            &scaled * &right.adjoint()
        }
    };
    FrameSequence::from_synthesis(&t)
}
