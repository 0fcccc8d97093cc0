//! The canonical dual of a redundant frame and the expansion it gives.

use framekit::frame::canonical_dual;
use framekit::matrix::{inner, max_abs_diff_vec, real_vec, ZERO};
use framekit::{FrameSequence, Tolerance};

fn main() -> framekit::Result<()> {
    let frame = FrameSequence::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]])?;
    let tol = Tolerance::default();
    let dual = canonical_dual(&frame, &tol)?;
    for (k, v) in dual.vectors().iter().enumerate() {
        println!("dual[{k}] = ({:+.4}, {:+.4})", v[0].re, v[1].re);
    }

    // f = sum_k <f, dual_k> f_k
    let f = real_vec(&[3.0, -1.0]);
    let mut g = vec![ZERO; 2];
    for (fk, dk) in frame.vectors().iter().zip(dual.vectors()) {
        let c = inner(&f, dk);
        for (gi, x) in g.iter_mut().zip(fk) {
            *gi += c * x;
        }
    }
    println!("expansion error {:.2e}", max_abs_diff_vec(&f, &g));

    let back = canonical_dual(&dual, &tol)?;
    let err = frame
        .vectors()
        .iter()
        .zip(back.vectors())
        .map(|(a, b)| max_abs_diff_vec(a, b))
        .fold(0.0, f64::max);
    println!("dual of the dual differs from the frame by {err:.2e}");
    Ok(())
}
