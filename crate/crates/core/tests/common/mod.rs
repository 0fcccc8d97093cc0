#![allow(dead_code)]

use framekit::verify::{FrameRng, GeneratorKind, GeneratorSpec};
use framekit::{Matrix, Tolerance, C64};

/// Complex matrix with independent standard complex normal entries.
pub fn random_matrix(rng: &mut FrameRng, rows: usize, cols: usize) -> Matrix {
    rng.complex_matrix(rows, cols, 1.0)
}

/// Product of `rows x rank` and `rank x cols` factors, rescaled to unit max entry.
pub fn low_rank_matrix(rng: &mut FrameRng, rows: usize, cols: usize, rank: usize) -> Matrix {
    let x = random_matrix(rng, rows, rank);
    let y = random_matrix(rng, rank, cols);
    let m = &x * &y;
    let s = m.max_abs();
    m.scale_real(1.0 / s)
}

pub fn range(rng: &mut FrameRng, lo: usize, hi: usize) -> usize {
    lo + rng.below(hi - lo + 1)
}

/// The `index`-th generated frame of a kind: mostly `n <= 8, m <= 16`, every
/// tenth one larger. Ill-conditioned frames draw the condition target
/// log-uniformly from `[10, 1e6]` and scale `identity_abs` by it.
pub fn frame_case(kind: GeneratorKind, index: u64) -> (GeneratorSpec, Tolerance) {
    let mut rng = FrameRng::new(0xacce_0000 + index * 31 + kind as u64);
    let (n, m) = if index % 10 == 9 {
        (range(&mut rng, 9, 30), range(&mut rng, 9, 40))
    } else {
        (range(&mut rng, 2, 8), range(&mut rng, 2, 16))
    };
    let spec = GeneratorSpec::new(kind, n, m, index);
    if kind == GeneratorKind::IllConditioned {
        let kappa = 10f64.powf(1.0 + 5.0 * rng.uniform());
        (spec.with_condition(kappa), Tolerance::default().scaled(kappa))
    } else {
        (spec, Tolerance::default())
    }
}

pub fn scaled_vec(rng: &mut FrameRng, len: usize) -> Vec<C64> {
    let s = 1.0 / (len as f64).sqrt();
    rng.complex_vec(len).into_iter().map(|z| z * s).collect()
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting. Kept separate from the library so it can serve as an oracle.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let n = a.rows();
    let k = b.cols();
    let mut aug: Vec<Vec<C64>> = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)]).chain((0..k).map(|j| b[(i, j)])).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| aug[i][col].norm().total_cmp(&aug[j][col].norm()))?;
        if aug[piv][col].norm() == 0.0 {
            return None;
        }
        aug.swap(col, piv);
        for row in col + 1..n {
            let f = aug[row][col] / aug[col][col];
            let (top, bottom) = aug.split_at_mut(row);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * p;
            }
        }
    }
    let mut x = Matrix::zeros(n, k);
    for j in 0..k {
        for i in (0..n).rev() {
            let mut s = aug[i][n + j];
            for l in i + 1..n {
                s -= aug[i][l] * x[(l, j)];
            }
            x[(i, j)] = s / aug[i][i];
        }
    }
    Some(x)
}
