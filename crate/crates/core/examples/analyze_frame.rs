//! Classification and optimal bounds for a few small frame sequences.

use framekit::frame::classify;
use framekit::{FrameSequence, Tolerance};

fn report(name: &str, frame: &FrameSequence) -> framekit::Result<()> {
    let c = classify(frame, &Tolerance::default())?;
    print!("{name:<18} span {} of {}  ", c.span_dim, c.ambient_dim);
    match c.bounds {
        Some(b) => println!(
            "A = {:.6}  B = {:.6}  frame_for_h={} riesz={} tight={} parseval={}",
            b.lower, b.upper, c.is_frame_for_h, c.is_riesz_basis, c.is_tight, c.is_parseval
        ),
        None => println!("degenerate"),
    }
    Ok(())
}

fn main() -> framekit::Result<()> {
    let h = 3f64.sqrt() / 2.0;
    report("e1, e2, e1+e2", &FrameSequence::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]])?)?;
    report("Mercedes-Benz", &FrameSequence::from_real(2, &[&[0.0, 1.0], &[-h, -0.5], &[h, -0.5]])?)?;
    report("e1, e1 in C^2", &FrameSequence::from_real(2, &[&[1.0, 0.0], &[1.0, 0.0]])?)?;
    report("orthonormal in C^3", &FrameSequence::from_real(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]])?)?;
    report("zero vectors", &FrameSequence::from_real(2, &[&[0.0, 0.0]])?)?;
    Ok(())
}
