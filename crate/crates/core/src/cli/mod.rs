//! Command-line front end: `analyze`, `dual`, `reconstruct` and `verify`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad input or
//! usage, 3 degenerate span (for `analyze` and `verify` only under
//! `--strict`). The default `identity_abs` can be overridden through the
//! `FRAMEKIT_TOL` environment variable; `--tolerance` takes precedence.

mod document;
mod render;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use document::{DocumentError, Entry, InputDocument};
pub use render::{float, to_json};

use crate::frame::{FrameBounds, FrameClassification, FrameSequence, OperatorBundle};
use crate::matrix::{Tolerance, C64};
use crate::verify::{self, CheckStatus, GeneratorKind, GeneratorSpec, IdentityReport, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

pub const TOL_ENV: &str = "FRAMEKIT_TOL";

#[derive(Debug, Parser)]
#[command(name = "framekit", version, about = "Frame operators, bounds, duals and identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Absolute tolerance for identity checks [default: 1e-10, or $FRAMEKIT_TOL]
    #[arg(long, global = true, visible_alias = "tol", value_name = "ABS")]
    pub tolerance: Option<f64>,
    /// Relative singular value cutoff for the numerical rank
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_RANK_REL, value_name = "REL")]
    pub rank_rel: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Treat a degenerate (zero) span as an error
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// JSON with every float printed to 17 significant digits.
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a sequence and report its optimal frame bounds
    Analyze {
        /// Input document (`-` for standard input)
        input: String,
    },
    /// Print the canonical dual frame as a document
    Dual { input: String },
    /// Minimum-norm coefficients for `signal`, or preimage for `coefficients`
    Reconstruct { input: String },
    /// Run the identity suite on a generated frame, or on INPUT if given
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: Option<String>,
    #[arg(long, default_value = "gaussian", value_parser = parse_kind)]
    pub kind: GeneratorKind,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random probes per vector-valued check
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Unit vectors scored by the bound sampler
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Target condition number for `ill_conditioned`; also scales the tolerance
    #[arg(long, default_value_t = 1e3)]
    pub condition: f64,
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Outcome of a command: exit code plus what goes to each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `tol_env` is the value of [`TOL_ENV`], if set.
pub fn run<I, T>(args: I, tol_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let mut text = e.render().to_string();
            return if e.use_stderr() {
                if !text.contains("Usage:") {
                    let usage = <Cli as clap::CommandFactory>::command().render_usage();
                    text = format!("{text}\n{usage}\n");
                }
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(&cli, tol_env)
}

/// Runs with the process arguments and environment, writing to the real streams.
pub fn main_with_env() -> i32 {
    let env = std::env::var(TOL_ENV).ok();
    let out = run(std::env::args_os(), env.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    out.code
}

fn tolerance(global: &GlobalArgs, tol_env: Option<&str>) -> Result<Tolerance, String> {
    let identity_abs = match (global.tolerance, tol_env) {
        (Some(t), _) => t,
        (None, Some(s)) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("{TOL_ENV}: not a number: `{s}`"))?,
        (None, None) => Tolerance::DEFAULT_IDENTITY_ABS,
    };
    Tolerance::new(global.rank_rel, identity_abs).map_err(|e| e.to_string())
}

fn read_input(path: &str) -> Result<InputDocument, String> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    InputDocument::parse(&text).map_err(|e| format!("{path}: {e}"))
}

pub fn execute(cli: &Cli, tol_env: Option<&str>) -> Outcome {
    let tol = match tolerance(&cli.global, tol_env) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let g = &cli.global;
    let load = |path: &str| -> Result<(InputDocument, FrameSequence), Outcome> {
        let doc = read_input(path).map_err(|e| Outcome::fail(EXIT_INPUT, e))?;
        let frame = doc.frame().map_err(|e| Outcome::fail(EXIT_INPUT, format!("{path}: {e}")))?;
        Ok((doc, frame))
    };
    let result = match &cli.command {
        Command::Analyze { input } => load(input).and_then(|(_, f)| analyze(&f, &tol, g)),
        Command::Dual { input } => load(input).and_then(|(_, f)| dual(&f, &tol, g)),
        Command::Reconstruct { input } => load(input).and_then(|(d, f)| reconstruct(&d, &f, &tol, g)),
        Command::Verify(args) => match &args.input {
            Some(path) => load(path).and_then(|(_, f)| verify_frame(&f, None, &tol, args, g)),
            None => verify_generated(&tol, args, g),
        },
    };
    result.unwrap_or_else(|o| o)
}

fn library_error(e: crate::Error) -> Outcome {
    match e {
        crate::Error::DegenerateSpan => Outcome::fail(EXIT_DEGENERATE, e),
        other => Outcome::fail(EXIT_INPUT, other),
    }
}

#[derive(Serialize)]
struct AnalyzeReport<'a> {
    command: &'static str,
    #[serde(flatten)]
    classification: &'a FrameClassification,
}

fn analyze(frame: &FrameSequence, tol: &Tolerance, g: &GlobalArgs) -> Result<Outcome, Outcome> {
    let c = crate::frame::classify(frame, tol).map_err(library_error)?;
    let body = match g.format {
        Format::Structured => to_json(&AnalyzeReport {
            command: "analyze",
            classification: &c,
        }),
        Format::Text => analyze_text(&c),
    };
    if c.is_degenerate && g.strict {
        return Err(Outcome {
            code: EXIT_DEGENERATE,
            stdout: body,
            stderr: "error: span of the sequence is numerically zero\n".into(),
        });
    }
    Ok(Outcome::ok(body))
}

fn analyze_text(c: &FrameClassification) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ambient_dim: {}", c.ambient_dim);
    let _ = writeln!(s, "len: {}", c.len);
    let _ = writeln!(s, "span_dim: {}", c.span_dim);
    if c.is_degenerate {
        let _ = writeln!(s, "verdict: degenerate (all vectors are numerically zero)");
        return s;
    }
    if let Some(r) = c.redundancy {
        let _ = writeln!(s, "redundancy: {}", float(r));
    }
    if let Some(FrameBounds { lower, upper, .. }) = c.bounds {
        let _ = writeln!(s, "A: {}", float(lower));
        let _ = writeln!(s, "B: {}", float(upper));
    }
    let _ = writeln!(s, "frame_for_h: {}", c.is_frame_for_h);
    let _ = writeln!(s, "riesz_basis: {}", c.is_riesz_basis);
    let _ = writeln!(s, "tight: {}", c.is_tight);
    let _ = writeln!(s, "parseval: {}", c.is_parseval);
    s
}

fn dual(frame: &FrameSequence, tol: &Tolerance, g: &GlobalArgs) -> Result<Outcome, Outcome> {
    let dual = crate::frame::canonical_dual(frame, tol).map_err(library_error)?;
    let doc = InputDocument::from_frame(&dual);
    Ok(Outcome::ok(match g.format {
        Format::Structured => to_json(&doc),
        Format::Text => {
            let mut s = String::new();
            for (k, v) in dual.vectors().iter().enumerate() {
                let _ = writeln!(s, "dual[{k}]: {}", vector_text(v));
            }
            s
        }
    }))
}

fn vector_text(v: &[C64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|z| format!("[{}, {}]", float(z.re), float(z.im)))
        .collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Serialize)]
struct Solution {
    solution: Vec<Entry>,
    residual: f64,
}

#[derive(Serialize)]
struct ReconstructReport {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients_for_signal: Option<Solution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signal_for_coefficients: Option<Solution>,
}

fn reconstruct(doc: &InputDocument, frame: &FrameSequence, tol: &Tolerance, g: &GlobalArgs) -> Result<Outcome, Outcome> {
    let (signal, coefficients) = (doc.signal(), doc.coefficients());
    if signal.is_none() && coefficients.is_none() {
        return Err(Outcome::fail(
            EXIT_INPUT,
            "missing payload: the document needs a `signal` or `coefficients` field",
        ));
    }
    let b = OperatorBundle::build(frame, tol).map_err(library_error)?;
    let solve = |sol: crate::reconstruct::MinNormSolution| Solution {
        solution: document::from_complex(&sol.solution),
        residual: sol.residual_norm,
    };
    let report = ReconstructReport {
        command: "reconstruct",
        coefficients_for_signal: signal
            .map(|f| b.min_norm_coefficients(&f).map(solve))
            .transpose()
            .map_err(library_error)?,
        signal_for_coefficients: coefficients
            .map(|c| b.min_norm_preimage(&c).map(solve))
            .transpose()
            .map_err(library_error)?,
    };
    Ok(Outcome::ok(match g.format {
        Format::Structured => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            if let Some(sol) = &report.coefficients_for_signal {
                let _ = writeln!(s, "c0: {}", entries_text(&sol.solution));
                let _ = writeln!(s, "residual |f - Pf|: {}", float(sol.residual));
            }
            if let Some(sol) = &report.signal_for_coefficients {
                let _ = writeln!(s, "f0: {}", entries_text(&sol.solution));
                let _ = writeln!(s, "residual |c - Qc|: {}", float(sol.residual));
            }
            s
        }
    }))
}

fn entries_text(e: &[Entry]) -> String {
    vector_text(&e.iter().map(|[re, im]| C64::new(*re, *im)).collect::<Vec<_>>())
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<GeneratorSpec>,
    trials: u64,
    samples: u64,
    seed: u64,
    #[serde(flatten)]
    report: &'a IdentityReport,
}

fn verify_generated(tol: &Tolerance, args: &VerifyArgs, g: &GlobalArgs) -> Result<Outcome, Outcome> {
    let mut spec = GeneratorSpec::new(args.kind, args.n, args.m, args.seed);
    let mut tol = *tol;
    if args.kind == GeneratorKind::IllConditioned {
        spec = spec.with_condition(args.condition);
        tol = tol.scaled(args.condition);
    }
    let frame = verify::generate(&spec).map_err(|e| Outcome::fail(EXIT_INPUT, e))?;
    verify_frame(&frame, Some(spec), &tol, args, g)
}

fn verify_frame(
    frame: &FrameSequence,
    spec: Option<GeneratorSpec>,
    tol: &Tolerance,
    args: &VerifyArgs,
    g: &GlobalArgs,
) -> Result<Outcome, Outcome> {
    let config = SuiteConfig {
        trials: args.trials as usize,
        samples: args.samples as usize,
        seed: args.seed,
    };
    let report = verify::run_identity_suite_with(frame, tol, &config).map_err(library_error)?;
    let body = match g.format {
        Format::Structured => to_json(&VerifyReport {
            command: "verify",
            generator: spec,
            trials: args.trials,
            samples: args.samples,
            seed: args.seed,
            report: &report,
        }),
        Format::Text => verify_text(&report, spec.as_ref()),
    };
    let degenerate = report.span_dim == 0;
    let code = if !report.passed {
        EXIT_VERIFY_FAILED
    } else if degenerate && g.strict {
        EXIT_DEGENERATE
    } else {
        EXIT_OK
    };
    let stderr = match code {
        EXIT_VERIFY_FAILED => {
            let names: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
            format!("error: {} check(s) failed: {}\n", names.len(), names.join(", "))
        }
        EXIT_DEGENERATE => "error: span of the sequence is numerically zero\n".into(),
        _ => String::new(),
    };
    Ok(Outcome {
        code,
        stdout: body,
        stderr,
    })
}

fn verify_text(report: &IdentityReport, spec: Option<&GeneratorSpec>) -> String {
    let mut s = String::new();
    if let Some(spec) = spec {
        let _ = write!(s, "frame: {} n={} m={} seed={}", spec.kind, spec.n, spec.m, spec.seed);
        if spec.kind == GeneratorKind::IllConditioned {
            let _ = write!(s, " condition={}", float(spec.condition_target));
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "ambient_dim: {}  len: {}  span_dim: {}",
        report.ambient_dim, report.len, report.span_dim
    );
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        if c.status == CheckStatus::Skipped {
            let _ = writeln!(s, "{status} {:<34} {}", c.name, c.detail.as_deref().unwrap_or(""));
        } else {
            let _ = writeln!(
                s,
                "{status} {:<34} {} <= {}",
                c.name,
                float(c.deviation),
                float(c.tolerance)
            );
        }
    }
    let _ = writeln!(s, "result: {}", if report.passed { "pass" } else { "fail" });
    s
}
