mod common;

use framekit::matrix::{numerical_rank, op_norm, pinv, range_projector, singular_values, svd};
use framekit::verify::FrameRng;
use framekit::{Matrix, Tolerance, C64};
use proptest::prelude::*;

fn matrix_strategy(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max, any::<u64>()).prop_map(|(r, c, seed)| common::random_matrix(&mut FrameRng::new(seed), r, c))
}

fn low_rank_strategy() -> impl Strategy<Value = (Matrix, usize)> {
    (2..=10usize, 2..=10usize, any::<u64>()).prop_flat_map(|(r, c, seed)| {
        (1..r.min(c)).prop_map(move |k| (common::low_rank_matrix(&mut FrameRng::new(seed), r, c, k), k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn moore_penrose_conditions(a in matrix_strategy(12)) {
        let p = pinv(&a, &Tolerance::default()).unwrap();
        let ap = &a * &p;
        let pa = &p * &a;
        prop_assert!((&ap * &a).max_abs_diff(&a) < 1e-10);
        prop_assert!((&pa * &p).max_abs_diff(&p) < 1e-10 * p.max_abs().max(1.0));
        prop_assert!(ap.hermitian_defect() < 1e-10);
        prop_assert!(pa.hermitian_defect() < 1e-10);
    }

    #[test]
    fn pinv_of_adjoint_is_adjoint_of_pinv(a in matrix_strategy(10)) {
        let tol = Tolerance::default();
        let lhs = pinv(&a.adjoint(), &tol).unwrap();
        let rhs = pinv(&a, &tol).unwrap().adjoint();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * rhs.max_abs().max(1.0));
    }

    #[test]
    fn svd_reconstructs_and_is_orthonormal(a in matrix_strategy(12)) {
        let f = svd(&a, &Tolerance::default()).unwrap();
        prop_assert!(f.reconstruct().max_abs_diff(&a) < 1e-12 * a.max_abs().max(1.0) * 10.0);
        let k = f.rank;
        let uu = &f.left_vectors.adjoint() * &f.left_vectors;
        let vv = &f.right_vectors.adjoint() * &f.right_vectors;
        prop_assert!(uu.max_abs_diff(&Matrix::identity(k)) < 1e-12);
        prop_assert!(vv.max_abs_diff(&Matrix::identity(k)) < 1e-12);
        prop_assert!(f.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn planted_rank_is_recovered((a, k) in low_rank_strategy()) {
        let tol = Tolerance::default();
        prop_assert_eq!(numerical_rank(&a, &tol).unwrap(), k);
        let p = range_projector(&a, &tol).unwrap();
        prop_assert!((&p * &p).max_abs_diff(&p) < 1e-12);
        prop_assert!((&p * &a).max_abs_diff(&a) < 1e-12);
        prop_assert!((p.trace().re - k as f64).abs() < 1e-10);
    }

    #[test]
    fn op_norm_dominates_matrix_vector_products(a in matrix_strategy(8), seed in any::<u64>()) {
        let nrm = op_norm(&a).unwrap();
        let mut rng = FrameRng::new(seed);
        for _ in 0..10 {
            let x = rng.complex_vec(a.cols());
            let ax = framekit::matrix::norm(&a.mul_vec(&x));
            prop_assert!(ax <= nrm * framekit::matrix::norm(&x) * (1.0 + 1e-12));
        }
        // the Frobenius norm squared is the sum of squared singular values
        let sv = singular_values(&a).unwrap();
        let fro: f64 = sv.iter().map(|s| s * s).sum();
        prop_assert!((fro - a.frobenius_norm().powi(2)).abs() < 1e-10 * fro.max(1.0));
    }

    #[test]
    fn pinv_scales_inversely(a in matrix_strategy(8), re in 0.1f64..10.0, im in -10.0f64..10.0) {
        let tol = Tolerance::default();
        let z = C64::new(re, im);
        let lhs = pinv(&a.scale(z), &tol).unwrap();
        let rhs = pinv(&a, &tol).unwrap().scale(z.inv());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * rhs.max_abs().max(1.0));
    }
}

/// For full column rank, `A^dagger = (A^* A)^-1 A^*`, solved by an
/// elimination routine independent of the library.
#[test]
fn full_column_rank_matches_normal_equations() {
    let mut rng = FrameRng::new(11);
    let tol = Tolerance::default();
    for _ in 0..200 {
        let cols = common::range(&mut rng, 1, 8);
        let rows = common::range(&mut rng, cols, 12);
        let a = common::random_matrix(&mut rng, rows, cols);
        let ah = a.adjoint();
        let oracle = common::solve(&(&ah * &a), &ah).expect("full rank");
        let p = pinv(&a, &tol).unwrap();
        assert!(p.max_abs_diff(&oracle) < 1e-9 * oracle.max_abs().max(1.0));
    }
}

#[test]
fn full_row_rank_matches_normal_equations() {
    let mut rng = FrameRng::new(12);
    let tol = Tolerance::default();
    for _ in 0..200 {
        let rows = common::range(&mut rng, 1, 8);
        let cols = common::range(&mut rng, rows, 12);
        let a = common::random_matrix(&mut rng, rows, cols);
        let ah = a.adjoint();
        // A^dagger = A^* (A A^*)^-1, i.e. (A^dagger)^* solves (A A^*) X = A
        let x = common::solve(&(&a * &ah), &a).expect("full rank");
        let p = pinv(&a, &tol).unwrap();
        assert!(p.max_abs_diff(&x.adjoint()) < 1e-9 * x.max_abs().max(1.0));
    }
}
