mod common;

use framekit::matrix::{self, C64};
use framekit::reconstruct::{min_norm_coefficients, project_coefficients, CoefficientVector};
use framekit::verify::{generate, FrameRng, GeneratorKind, GeneratorSpec};
use framekit::{FrameSequence, OperatorBundle, Tolerance};
use proptest::prelude::*;

fn bundle_strategy() -> impl Strategy<Value = OperatorBundle> {
    (prop::sample::select(GeneratorKind::ALL.to_vec()), 2..=8usize, 2..=14usize, any::<u64>()).prop_map(
        |(kind, n, m, seed)| {
            let spec = GeneratorSpec::new(kind, n, m, seed).with_condition(50.0);
            OperatorBundle::build(&generate(&spec).unwrap(), &Tolerance::default()).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn min_norm_coefficients_solve_and_are_shortest(b in bundle_strategy(), seed in any::<u64>()) {
        let mut rng = FrameRng::new(seed);
        let f = common::scaled_vec(&mut rng, b.ambient_dim());
        let sol = b.min_norm_coefficients(&f).unwrap();
        let c0 = &sol.solution;
        prop_assert!(matrix::max_abs_diff_vec(&b.t.mul_vec(c0), &b.p.mul_vec(&f)) < 1e-10);
        prop_assert!(matrix::max_abs_diff_vec(&b.q.mul_vec(c0), c0) < 1e-10);
        let base = matrix::norm_sqr(c0);
        for _ in 0..20 {
            let z = common::scaled_vec(&mut rng, b.len());
            let k = matrix::sub_vec(&z, &b.q.mul_vec(&z));
            // c0 is orthogonal to the kernel, so the squared norms add
            let moved = matrix::norm_sqr(&matrix::add_vec(c0, &k));
            prop_assert!((moved - base - matrix::norm_sqr(&k)).abs() < 1e-10 * moved.max(1.0));
        }
        let (pf, perp) = sol.norm_split;
        prop_assert!((pf + perp - matrix::norm_sqr(&f)).abs() < 1e-12);
        prop_assert!((perp.sqrt() - sol.residual_norm).abs() < 1e-12);
    }

    #[test]
    fn min_norm_preimage_matches_and_lies_in_span(b in bundle_strategy(), seed in any::<u64>()) {
        let mut rng = FrameRng::new(seed);
        let c = common::scaled_vec(&mut rng, b.len());
        let sol = b.min_norm_preimage(&c).unwrap();
        let f0 = &sol.solution;
        prop_assert!(matrix::max_abs_diff_vec(&b.u.mul_vec(f0), &b.q.mul_vec(&c)) < 1e-10);
        prop_assert!(matrix::max_abs_diff_vec(&b.p.mul_vec(f0), f0) < 1e-10);
        let qc = b.q.mul_vec(&c);
        prop_assert!((matrix::norm(&matrix::sub_vec(&c, &qc)) - sol.residual_norm).abs() < 1e-12);
    }

    #[test]
    fn series_agree_with_projectors(b in bundle_strategy(), seed in any::<u64>()) {
        let mut rng = FrameRng::new(seed);
        let f = common::scaled_vec(&mut rng, b.ambient_dim());
        let c = common::scaled_vec(&mut rng, b.len());
        let pf = b.project_signal(&f).unwrap();
        let qc = b.project_coefficients(&c).unwrap();
        prop_assert!(pf.deviation < 1e-10);
        prop_assert!(qc.deviation < 1e-10);
        prop_assert!(matrix::max_abs_diff_vec(&qc.value, &b.q.mul_vec(&c)) < 1e-10);
    }

    #[test]
    fn min_norm_coefficients_are_linear(b in bundle_strategy(), seed in any::<u64>(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let mut rng = FrameRng::new(seed);
        let f = common::scaled_vec(&mut rng, b.ambient_dim());
        let g = common::scaled_vec(&mut rng, b.ambient_dim());
        let a = C64::new(re, im);
        let combo: Vec<C64> = f.iter().zip(&g).map(|(x, y)| a * x + y).collect();
        let lhs = b.min_norm_coefficients(&combo).unwrap().solution;
        let cf = b.min_norm_coefficients(&f).unwrap().solution;
        let cg = b.min_norm_coefficients(&g).unwrap().solution;
        let rhs: Vec<C64> = cf.iter().zip(&cg).map(|(x, y)| a * x + y).collect();
        prop_assert!(matrix::max_abs_diff_vec(&lhs, &rhs) < 1e-10);
    }
}

/// Brute-force check on `{e1, e1}`: every solution of `c1 + c2 = 1` is at
/// least as long as `(1/2, 1/2)`.
#[test]
fn duplicated_vector_split_evenly() {
    let tol = Tolerance::default();
    let frame = FrameSequence::from_real(2, &[&[1.0, 0.0], &[1.0, 0.0]]).unwrap();
    let f = matrix::real_vec(&[1.0, 0.0]);
    let c0 = min_norm_coefficients(&frame, &f, &tol).unwrap().solution;
    assert!(matrix::max_abs_diff_vec(&c0, &matrix::real_vec(&[0.5, 0.5])) < 1e-15);
    for i in 0..=100 {
        let t = -2.0 + 0.05 * i as f64;
        let c = matrix::real_vec(&[t, 1.0 - t]);
        assert!(matrix::norm(&c) >= matrix::norm(&c0) - 1e-15);
    }
    let c = CoefficientVector::new(matrix::real_vec(&[1.0, 0.0])).unwrap();
    let q = project_coefficients(&frame, &c, &tol).unwrap();
    assert!(matrix::max_abs_diff_vec(q.as_slice(), &matrix::real_vec(&[0.5, 0.5])) < 1e-15);
}
