//! Generated tight frames: S = A P, G = A Q, and the polarization check.

use framekit::verify::{generate, polarization_check, GeneratorKind, GeneratorSpec};
use framekit::{OperatorBundle, Tolerance};

fn main() -> framekit::Result<()> {
    let tol = Tolerance::default();
    for (n, m, seed) in [(2, 3, 7), (4, 7, 42), (5, 3, 1)] {
        let frame = generate(&GeneratorSpec::new(GeneratorKind::Tight, n, m, seed))?;
        let b = OperatorBundle::build(&frame, &tol)?;
        let bounds = b.frame_bounds()?;
        let a = bounds.lower;
        println!(
            "n={n} m={m}: A = {a:.6}, B/A - 1 = {:.1e}, |S - AP| = {:.1e}, |G - AQ| = {:.1e}",
            bounds.ratio() - 1.0,
            b.s.max_abs_diff(&b.p.scale_real(a)),
            b.g.max_abs_diff(&b.q.scale_real(a)),
        );
        let rec = polarization_check(&frame, 100, &tol)?;
        println!("  polarization deviation {:.1e} ({:?})", rec.deviation, rec.status);
    }
    Ok(())
}
