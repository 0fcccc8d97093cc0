//! Runs the identity suite on one frame of every generator kind.

use framekit::verify::{generate, run_identity_suite, CheckStatus, GeneratorKind, GeneratorSpec};
use framekit::Tolerance;

fn main() -> framekit::Result<()> {
    for kind in GeneratorKind::ALL {
        let mut spec = GeneratorSpec::new(kind, 5, 8, 3);
        let mut tol = Tolerance::default();
        if kind == GeneratorKind::IllConditioned {
            spec = spec.with_condition(1e5);
            tol = tol.scaled(1e5);
        }
        let frame = generate(&spec)?;
        let report = run_identity_suite(&frame, &tol)?;
        let skipped = report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Skipped)
            .count();
        println!(
            "{kind:<16} span {}  {} checks, {skipped} skipped, worst identity deviation {:.1e}: {}",
            report.span_dim,
            report.checks.len(),
            report.max_identity_deviation(),
            if report.passed { "pass" } else { "FAIL" }
        );
        for c in report.failures() {
            println!("    {} ({}): {:.2e} > {:.0e}", c.name, c.anchor, c.deviation, c.tolerance);
        }
    }
    Ok(())
}
