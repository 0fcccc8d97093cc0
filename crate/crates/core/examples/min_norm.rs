//! Minimum-norm coefficients for a signal, and the minimum-norm signal
//! with prescribed analysis coefficients.

use framekit::matrix::{norm, real_vec};
use framekit::{FrameSequence, OperatorBundle, Tolerance};

fn main() -> framekit::Result<()> {
    // e1 twice plus e2 in C^3; e3 is outside the span
    let frame = FrameSequence::from_real(3, &[&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]])?;
    let b = OperatorBundle::build(&frame, &Tolerance::default())?;

    let f = real_vec(&[2.0, 1.0, 5.0]);
    let sol = b.min_norm_coefficients(&f)?;
    let c: Vec<f64> = sol.solution.iter().map(|z| z.re).collect();
    println!("c0 = {c:?}  |c0| = {:.6}", norm(&sol.solution));
    println!("|f - Pf| = {:.6}", sol.residual_norm);

    let coeffs = real_vec(&[1.0, 0.0, 2.0]);
    let sol = b.min_norm_preimage(&coeffs)?;
    let f0: Vec<f64> = sol.solution.iter().map(|z| z.re).collect();
    println!("f0 = {f0:?}  |c - Qc| = {:.6}", sol.residual_norm);

    let series = b.project_signal(&f)?;
    println!("series for Pf agrees with the projector to {:.2e}", series.deviation);
    Ok(())
}
