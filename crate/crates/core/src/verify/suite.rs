//! Registry of numerical checks, one per operator identity, and the runner
//! that evaluates them on a frame sequence.
//!
//! Matrix identities report `max |lhs - rhs| / max(1, scale)`, where `scale`
//! is the product of the largest entries of the factors on the composite
//! side. For entries of order one this is the absolute entrywise error;
//! for large pseudoinverses it is the error relative to what floating-point
//! products of that size can resolve. Norm identities report relative error
//! and are held to [`NORM_REL`], or to `identity_abs` if that is looser.

use num_complex::Complex64;
use serde::Serialize;

use super::generate::FrameRng;
use super::sampling::rayleigh_envelope;
use crate::error::{Error, Result};
use crate::frame::{FrameBounds, FrameSequence, OperatorBundle};
use crate::matrix::{self, op_norm, pinv, singular_values, Matrix, Tolerance, C64};

/// Relative tolerance for norm and bound identities at the default `identity_abs`.
pub const NORM_REL: f64 = 1e-8;
/// Gap allowed between sampled extremes and the optimal bounds.
pub const APPROACH_REL: f64 = 0.05;
/// Sampled extremes must be approached only for `dim V` up to this value ...
pub const APPROACH_MAX_DIM: usize = 8;
/// ... and for at least this many samples.
pub const APPROACH_MIN_SAMPLES: usize = 10_000;
/// Sampled extremes may stray this far outside `[A, B]`.
pub const SAMPLING_SLACK: f64 = 1e-9;

/// Names and anchor formulas of every registered check, in report order.
pub const REGISTRY: &[(&str, &str)] = &[
    ("analysis_is_adjoint", "T = U* and U = T*"),
    ("frame_operator_is_tt_star", "S = TT*"),
    ("gram_is_t_star_t", "G = T*T"),
    ("range_is_span", "If T has closed range"),
    ("moore_penrose_t", "uniquely determined by these properties"),
    ("pinv_commutes_with_adjoint", "(U*)† = (U†)*"),
    ("s_pinv_projects", "SS† = S†S = P"),
    ("s_pinv_annihilates_complement", "S†(I − P) = 0"),
    ("s_pinv_commutes_with_p", "S†P = PS† = S†"),
    ("g_pinv_projects", "GG† = Q = G†G"),
    ("g_pinv_annihilates_complement", "G†(I − Q) = 0"),
    ("g_pinv_commutes_with_q", "G†Q = QG† = G†"),
    ("pinv_is_dual_analysis", "The pseudo-inverse of T is Ũ"),
    ("pinv_via_frame_operator", "T† = T*S†"),
    ("pinv_gram_is_s_pinv", "(T†)*T† = S†"),
    ("pinv_adjoint_via_frame_operator", "(T†)* = S†T"),
    ("adjoint_pinv_via_gram", "(T*)† = TG†"),
    ("pinv_outer_is_g_pinv", "T†(T†)* = G†"),
    ("pinv_via_gram", "T† = G†T*"),
    ("norm_t_squared_is_norm_s", "‖T‖² = ‖S‖"),
    ("norm_pinv_squared_is_norm_s_pinv", "‖T†‖² = ‖S†‖"),
    ("norm_g_is_norm_s", "‖G‖ = ‖S‖"),
    ("intertwining", "T*S = GT* and ST = TG"),
    ("dual_reproduces_projection", "TŨ = ι_V P"),
    ("cross_gram_is_q", "Q is the Gram matrix"),
    ("s_pinv_is_dual_frame_operator", "the same as the operator S̃"),
    ("g_pinv_is_dual_gram", "is the same as G̃"),
    ("dual_bounds_reciprocal", "the bounds Ã = 1/B"),
    ("dual_involution", "the canonical dual frame for"),
    ("restricted_relations", "following basic relationships between these operators"),
    ("optimal_bounds", "uses the optimal bounds for"),
    ("frame_inequalities", "The following are equivalent"),
    ("quadratic_form_bounds", "S is continuous, has closed range"),
    ("pinv_energy", "‖T†f‖² = ⟨f,S†f⟩"),
    ("signal_series", "be restated in terms of S†"),
    ("coefficient_series", "⟨c, G†T*fₖ⟩εₖ"),
    ("min_norm_coefficients", "the one with the minimum norm"),
    ("min_norm_preimage", "‖f‖² = ‖f₀‖² + ‖f − f₀‖²"),
    ("tight_operators", "be a tight frame sequence in"),
    ("polarization", "An analog of the polarization identity"),
    ("bounds_vs_sampling", "positive constants A,B such that"),
];

fn anchor_of(name: &str) -> &'static str {
    REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, a)| *a)
        .unwrap_or_else(|| panic!("check `{name}` missing from registry"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not applicable to this sequence (e.g. tight-frame laws on a non-tight frame).
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    fn measured(name: &str, deviation: f64, tolerance: f64) -> Self {
        let status = if deviation <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name: name.to_string(),
            anchor: anchor_of(name).to_string(),
            deviation,
            tolerance,
            status,
            detail: None,
        }
    }

    fn skipped(name: &str, why: &str) -> Self {
        Self {
            name: name.to_string(),
            anchor: anchor_of(name).to_string(),
            deviation: 0.0,
            tolerance: 0.0,
            status: CheckStatus::Skipped,
            detail: Some(why.to_string()),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub ambient_dim: usize,
    pub len: usize,
    pub span_dim: usize,
    pub identity_abs: f64,
    pub norm_rel: f64,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl IdentityReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Largest deviation among checks that were evaluated against `identity_abs`.
    pub fn max_identity_deviation(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.status != CheckStatus::Skipped && c.tolerance == self.identity_abs)
            .map(|c| c.deviation)
            .fold(0.0, f64::max)
    }
}

/// Knobs for the random parts of the suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    /// Random probe vectors per vector-valued check.
    pub trials: usize,
    /// Unit vectors scored by the bound sampler.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 50,
            samples: 10_000,
            seed: 0x5eed,
        }
    }
}

/// Relative tolerance for norm identities; never tighter than `identity_abs`.
pub fn norm_tolerance(tol: &Tolerance) -> f64 {
    NORM_REL.max(tol.identity_abs)
}

fn magnitude(factors: &[&Matrix]) -> f64 {
    factors.iter().map(|m| m.max_abs()).product::<f64>().max(1.0)
}

fn dev(lhs: &Matrix, rhs: &Matrix, factors: &[&Matrix]) -> f64 {
    lhs.max_abs_diff(rhs) / magnitude(factors)
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn scalar_dev(a: C64, b: C64, scale: f64) -> f64 {
    (a - b).norm() / scale.max(1.0)
}

struct Runner<'a> {
    frame: &'a FrameSequence,
    b: &'a OperatorBundle,
    dual: Option<(FrameSequence, OperatorBundle)>,
    bounds: Option<FrameBounds>,
    tol: Tolerance,
    norm_rel: f64,
    config: SuiteConfig,
    rng: FrameRng,
    records: Vec<CheckRecord>,
}

impl Runner<'_> {
    fn push(&mut self, name: &str, deviation: f64) {
        self.records
            .push(CheckRecord::measured(name, deviation, self.tol.identity_abs));
    }

    fn push_rel(&mut self, name: &str, deviation: f64) {
        self.records
            .push(CheckRecord::measured(name, deviation, self.norm_rel));
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.records.push(CheckRecord::skipped(name, why));
    }

    fn signal(&mut self) -> Vec<C64> {
        let n = self.b.ambient_dim();
        let s = 1.0 / (n as f64).sqrt();
        self.rng.complex_vec(n).into_iter().map(|z| z * s).collect()
    }

    fn coefficients(&mut self) -> Vec<C64> {
        let m = self.b.len();
        let s = 1.0 / (m as f64).sqrt();
        self.rng.complex_vec(m).into_iter().map(|z| z * s).collect()
    }

    fn run(&mut self) -> Result<()> {
        let b = self.b;
        let (n, m) = (b.ambient_dim(), b.len());
        let id_n = Matrix::identity(n);
        let id_m = Matrix::identity(m);
        let t_adj = &b.u;
        let tp_adj = b.t_pinv.adjoint();

        self.push("analysis_is_adjoint", b.u.max_abs_diff(&b.t.adjoint()));
        self.push("frame_operator_is_tt_star", dev(&b.s, &(&b.t * t_adj), &[&b.t, &b.u]));
        self.push("gram_is_t_star_t", dev(&b.g, &(t_adj * &b.t), &[&b.u, &b.t]));

        // P f_k = f_k for every k and rank P = dim span
        let range = (0..m)
            .map(|k| {
                let fk = self.frame.vector(k);
                matrix::max_abs_diff_vec(&b.p.mul_vec(fk), fk) / magnitude(&[&b.p]).max(matrix::norm(fk))
            })
            .fold(0.0, f64::max);
        let trace_gap = (b.p.trace().re - b.span_dim() as f64).abs();
        self.push("range_is_span", range.max(trace_gap));

        let (t, tp) = (&b.t, &b.t_pinv);
        let tt = t * tp;
        let pt = tp * t;
        let mp = [
            dev(&(&tt * t), t, &[t, tp, t]),
            dev(&(&pt * tp), tp, &[tp, t, tp]),
            tt.hermitian_defect() / magnitude(&[t, tp]),
            pt.hermitian_defect() / magnitude(&[tp, t]),
        ];
        self.push("moore_penrose_t", mp.into_iter().fold(0.0, f64::max));

        let u_pinv = pinv(&b.u, &self.tol)?;
        self.push("pinv_commutes_with_adjoint", dev(&u_pinv, &tp_adj, &[tp]));

        let (s, sp, p) = (&b.s, &b.s_pinv, &b.p);
        self.push(
            "s_pinv_projects",
            dev(&(s * sp), p, &[s, sp]).max(dev(&(sp * s), p, &[sp, s])),
        );
        self.push(
            "s_pinv_annihilates_complement",
            dev(&(sp * &(&id_n - p)), &Matrix::zeros(n, n), &[sp, p]),
        );
        self.push(
            "s_pinv_commutes_with_p",
            dev(&(sp * p), sp, &[sp, p]).max(dev(&(p * sp), sp, &[p, sp])),
        );

        let (g, gp, q) = (&b.g, &b.g_pinv, &b.q);
        self.push(
            "g_pinv_projects",
            dev(&(g * gp), q, &[g, gp]).max(dev(&(gp * g), q, &[gp, g])),
        );
        self.push(
            "g_pinv_annihilates_complement",
            dev(&(gp * &(&id_m - q)), &Matrix::zeros(m, m), &[gp, q]),
        );
        self.push(
            "g_pinv_commutes_with_q",
            dev(&(gp * q), gp, &[gp, q]).max(dev(&(q * gp), gp, &[q, gp])),
        );

        match &self.dual {
            Some((_, d)) => {
                let v = dev(tp, &d.u, &[tp]).max(dev(&u_pinv, &d.t, &[&u_pinv]));
                self.push("pinv_is_dual_analysis", v);
            }
            None => self.skip("pinv_is_dual_analysis", "span is zero"),
        }

        self.push("pinv_via_frame_operator", dev(tp, &(t_adj * sp), &[t_adj, sp]));
        self.push("pinv_gram_is_s_pinv", dev(&(&tp_adj * tp), sp, &[&tp_adj, tp]));
        self.push("pinv_adjoint_via_frame_operator", dev(&tp_adj, &(sp * t), &[sp, t]));
        self.push("adjoint_pinv_via_gram", dev(&u_pinv, &(t * gp), &[t, gp]));
        self.push("pinv_outer_is_g_pinv", dev(&(tp * &tp_adj), gp, &[tp, &tp_adj]));
        self.push("pinv_via_gram", dev(tp, &(gp * t_adj), &[gp, t_adj]));

        let norm_t = op_norm(t)?;
        let norm_tp = op_norm(tp)?;
        let norm_s = op_norm(s)?;
        let norm_sp = op_norm(sp)?;
        let norm_g = op_norm(g)?;
        let norm_gp = op_norm(gp)?;
        self.push_rel("norm_t_squared_is_norm_s", rel(norm_t * norm_t, norm_s));
        self.push_rel("norm_pinv_squared_is_norm_s_pinv", rel(norm_tp * norm_tp, norm_sp));
        self.push_rel("norm_g_is_norm_s", rel(norm_g, norm_s).max(rel(norm_gp, norm_sp)));

        self.push(
            "intertwining",
            dev(&(t_adj * s), &(g * t_adj), &[t_adj, s, g]).max(dev(&(s * t), &(t * g), &[s, t, g])),
        );

        self.dual_checks()?;
        self.restricted_checks()?;
        self.inequality_checks();
        self.series_checks()?;
        self.tight_checks();

        match self.bounds {
            Some(_) => {
                let rec = sampling_record(self.frame, b, self.config.samples, &mut self.rng)?;
                self.records.push(rec);
            }
            None => self.skip("bounds_vs_sampling", "span is zero"),
        }
        Ok(())
    }

    fn dual_checks(&mut self) -> Result<()> {
        let b = self.b;
        let Some((_, d)) = &self.dual else {
            for name in [
                "dual_reproduces_projection",
                "cross_gram_is_q",
                "s_pinv_is_dual_frame_operator",
                "g_pinv_is_dual_gram",
                "dual_bounds_reciprocal",
                "dual_involution",
            ] {
                self.skip(name, "span is zero");
            }
            return Ok(());
        };
        let reproduce = dev(&(&b.t * &d.u), &b.p, &[&b.t, &d.u]).max(dev(&(&d.t * &b.u), &b.p, &[&d.t, &b.u]));
        let cross = dev(&(&b.u * &d.t), &b.q, &[&b.u, &d.t]);
        let s_dual = dev(&b.s_pinv, &d.s, &[&d.t, &d.u]);
        let g_dual = dev(&b.g_pinv, &d.g, &[&d.u, &d.t]);
        let bounds = self.bounds.expect("bounds exist when the span is nonzero");
        let dual_bounds = d.frame_bounds()?;
        let reciprocal = rel(dual_bounds.lower, 1.0 / bounds.upper).max(rel(dual_bounds.upper, 1.0 / bounds.lower));
        let double = d.canonical_dual()?;
        let involution = self
            .frame
            .vectors()
            .iter()
            .zip(double.vectors())
            .map(|(a, c)| matrix::max_abs_diff_vec(a, c))
            .fold(0.0, f64::max)
            / magnitude(&[&d.s_pinv, &d.t]);

        self.push("dual_reproduces_projection", reproduce);
        self.push("cross_gram_is_q", cross);
        self.push("s_pinv_is_dual_frame_operator", s_dual);
        self.push("g_pinv_is_dual_gram", g_dual);
        self.push_rel("dual_bounds_reciprocal", reciprocal);
        self.push("dual_involution", involution);
        Ok(())
    }

    fn restricted_checks(&mut self) -> Result<()> {
        let b = self.b;
        let Some(bounds) = self.bounds else {
            self.skip("restricted_relations", "span is zero");
            self.skip("optimal_bounds", "span is zero");
            return Ok(());
        };
        let r = b.restricted()?;
        let w = &r.basis;
        let wa = w.adjoint();
        let k = w.cols();
        let rel_dev = [
            dev(&(&wa * w), &Matrix::identity(k), &[&wa, w]),
            dev(&(w * &r.t_res), &b.t, &[w, &r.t_res]),
            dev(&(&r.u_res * &wa), &b.u, &[&r.u_res, &wa]),
            dev(&(&r.s_res * &r.s_res_inv), &Matrix::identity(k), &[&r.s_res, &r.s_res_inv]),
            r.s_res.hermitian_defect() / magnitude(&[&r.s_res]),
            dev(&(w * &wa), &b.p, &[w, &wa]),
        ];
        self.push("restricted_relations", rel_dev.into_iter().fold(0.0, f64::max));

        // A = |T^dagger|^-2 and B = |T|^2 against the extreme eigenvalues of S_res
        let eig = singular_values(&r.s_res)?;
        let (eig_max, eig_min) = (eig[0], eig[eig.len() - 1]);
        let norm_tp = op_norm(&b.t_pinv)?;
        let norm_t = op_norm(&b.t)?;
        let d = [
            rel(bounds.lower, norm_tp.powi(-2)),
            rel(bounds.upper, norm_t * norm_t),
            rel(bounds.lower, eig_min),
            rel(bounds.upper, eig_max),
        ];
        let rec = CheckRecord::measured("optimal_bounds", d.into_iter().fold(0.0, f64::max), self.norm_rel)
            .with_detail(format!("A = {:.17e}, B = {:.17e}", bounds.lower, bounds.upper));
        self.records.push(rec);
        Ok(())
    }

    /// Two-sided frame inequalities on random `f` and `c`, and the quadratic
    /// form bounds for `S` and `G`.
    fn inequality_checks(&mut self) {
        let b = self.b;
        let Some(bounds) = self.bounds else {
            self.skip("frame_inequalities", "span is zero");
            self.skip("quadratic_form_bounds", "span is zero");
            return;
        };
        let (a, bb) = (bounds.lower, bounds.upper);
        // norms of S and S^dagger appear in the quadratic form version
        let s_norm = op_norm(&b.s).unwrap_or(bb);
        let sp_norm = op_norm(&b.s_pinv).unwrap_or(1.0 / a);
        let mut frame_viol: f64 = 0.0;
        let mut quad_viol: f64 = 0.0;
        for _ in 0..self.config.trials {
            let f = self.signal();
            let pf2 = matrix::norm_sqr(&b.p.mul_vec(&f));
            let tf2 = matrix::norm_sqr(&b.u.mul_vec(&f));
            let scale = bb * matrix::norm_sqr(&f);
            frame_viol = frame_viol.max((a * pf2 - tf2) / scale).max((tf2 - bb * pf2) / scale);
            let sff = matrix::inner(&b.s.mul_vec(&f), &f);
            quad_viol = quad_viol
                .max((pf2 / sp_norm - sff.re) / scale)
                .max((sff.re - s_norm * pf2) / scale)
                .max(sff.im.abs() / scale);

            let c = self.coefficients();
            let qc2 = matrix::norm_sqr(&b.q.mul_vec(&c));
            let tc2 = matrix::norm_sqr(&b.t.mul_vec(&c));
            let scale = bb * matrix::norm_sqr(&c);
            frame_viol = frame_viol.max((a * qc2 - tc2) / scale).max((tc2 - bb * qc2) / scale);
            let gcc = matrix::inner(&b.g.mul_vec(&c), &c);
            quad_viol = quad_viol
                .max((qc2 / sp_norm - gcc.re) / scale)
                .max((gcc.re - s_norm * qc2) / scale)
                .max(gcc.im.abs() / scale);
        }
        self.push("frame_inequalities", frame_viol.max(0.0));
        self.push("quadratic_form_bounds", quad_viol.max(0.0));
    }

    fn series_checks(&mut self) -> Result<()> {
        let b = self.b;
        let mut energy: f64 = 0.0;
        let mut signal: f64 = 0.0;
        let mut coeff: f64 = 0.0;
        let mut analysis: f64 = 0.0;
        let mut synthesis: f64 = 0.0;
        let degenerate = b.span_dim() == 0;
        let mag_sp = magnitude(&[&b.s_pinv, &b.t]);
        let mag_gp = magnitude(&[&b.g_pinv, &b.u, &b.t]);
        for _ in 0..self.config.trials {
            let f = self.signal();
            // |T^dagger f|^2 = <f, S^dagger f>
            let lhs = matrix::norm_sqr(&b.t_pinv.mul_vec(&f));
            let rhs = matrix::inner(&f, &b.s_pinv.mul_vec(&f));
            energy = energy.max(scalar_dev(C64::new(lhs, 0.0), rhs, magnitude(&[&b.s_pinv])));

            signal = signal.max(b.project_signal(&f)?.deviation / mag_sp);
            let c = self.coefficients();
            coeff = coeff.max(b.project_coefficients(&c)?.deviation / mag_gp);

            if degenerate {
                continue;
            }
            // T c_0 = P f, c_0 in range(T^*), and |c_0| <= |c_0 + k| for k in ker T
            let sol = b.min_norm_coefficients(&f)?;
            let c0 = &sol.solution;
            let tc0 = b.t.mul_vec(c0);
            let mut a = matrix::max_abs_diff_vec(&tc0, &b.p.mul_vec(&f))
                .max(matrix::max_abs_diff_vec(&b.q.mul_vec(c0), c0));
            let z = self.coefficients();
            let qz = b.q.mul_vec(&z);
            let kernel = matrix::sub_vec(&z, &qz);
            let longer = matrix::norm_sqr(&matrix::add_vec(c0, &kernel));
            let c0n = matrix::norm_sqr(c0);
            a = a.max((c0n - longer) / c0n.max(1.0));
            analysis = analysis.max(a / mag_sp);

            // U f_0 = Q c and the Pythagorean split for f = f_0 + v, v in V-perp
            let sol = b.min_norm_preimage(&c)?;
            let f0 = &sol.solution;
            let mut s = matrix::max_abs_diff_vec(&b.u.mul_vec(f0), &b.q.mul_vec(&c));
            let h = self.signal();
            let v = matrix::sub_vec(&h, &b.p.mul_vec(&h));
            let other = matrix::add_vec(f0, &v);
            let (x0, rest) = sol.split_against(&other);
            let total = matrix::norm_sqr(&other);
            s = s.max((x0 + rest - total).abs() / total.max(1.0));
            synthesis = synthesis.max(s / mag_sp);
        }
        self.push("pinv_energy", energy);
        self.push("signal_series", signal);
        self.push("coefficient_series", coeff);
        if degenerate {
            self.skip("min_norm_coefficients", "span is zero");
            self.skip("min_norm_preimage", "span is zero");
        } else {
            self.push("min_norm_coefficients", analysis);
            self.push("min_norm_preimage", synthesis);
        }
        Ok(())
    }

    fn tight_checks(&mut self) {
        let b = self.b;
        match self.bounds {
            Some(bounds) if bounds.tight => {
                let a = bounds.lower;
                let ap = b.p.scale_real(a);
                let aq = b.q.scale_real(a);
                let d = [
                    dev(&b.s, &ap, &[&b.s]),
                    dev(&b.g, &aq, &[&b.g]),
                    dev(&b.s_pinv, &b.p.scale_real(1.0 / a), &[&b.s_pinv]),
                    dev(&b.g_pinv, &b.q.scale_real(1.0 / a), &[&b.g_pinv]),
                ];
                self.push("tight_operators", d.into_iter().fold(0.0, f64::max));
                let rec = polarization_record(b, &bounds, self.config.trials, &mut self.rng, &self.tol);
                self.records.push(rec);
            }
            _ => {
                self.skip("tight_operators", "sequence is not tight");
                self.skip("polarization", "sequence is not tight");
            }
        }
    }
}

/// The three sides of the polarization identity for a tight frame with bound `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationTerms {
    /// `<G c, d>`
    pub gram: C64,
    /// `(A / 4) sum_k i^k |Q (c + i^k d)|^2`
    pub polarized: C64,
    /// `A <Q c, d>`
    pub projected: C64,
}

fn terms(b: &OperatorBundle, a: f64, c: &[C64], d: &[C64]) -> PolarizationTerms {
    let i = Complex64::new(0.0, 1.0);
    let phases = [C64::new(1.0, 0.0), i, C64::new(-1.0, 0.0), -i];
    let polarized = phases
        .iter()
        .map(|&ph| {
            let x: Vec<C64> = c.iter().zip(d).map(|(ci, di)| ci + ph * di).collect();
            ph * matrix::norm_sqr(&b.q.mul_vec(&x))
        })
        .sum::<C64>()
        * (a / 4.0);
    PolarizationTerms {
        gram: matrix::inner(&b.g.mul_vec(c), d),
        polarized,
        projected: matrix::inner(&b.q.mul_vec(c), d) * a,
    }
}

/// Polarization terms for coefficient sequences `c` and `d` of a tight frame.
pub fn polarization_terms(b: &OperatorBundle, c: &[C64], d: &[C64]) -> Result<PolarizationTerms> {
    for v in [c, d] {
        if v.len() != b.len() {
            return Err(Error::DimensionMismatch {
                context: "coefficients",
                expected: b.len(),
                found: v.len(),
            });
        }
    }
    let bounds = b.frame_bounds()?;
    if !bounds.tight {
        return Err(Error::NotTight {
            excess: bounds.ratio() - 1.0,
        });
    }
    Ok(terms(b, bounds.lower, c, d))
}

fn polarization_record(
    b: &OperatorBundle,
    bounds: &FrameBounds,
    trials: usize,
    rng: &mut FrameRng,
    tol: &Tolerance,
) -> CheckRecord {
    let a = bounds.lower;
    let m = b.len();
    let scale = 1.0 / (m as f64).sqrt();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let c: Vec<C64> = rng.complex_vec(m).into_iter().map(|z| z * scale).collect();
        let d: Vec<C64> = rng.complex_vec(m).into_iter().map(|z| z * scale).collect();
        let t = terms(b, a, &c, &d);
        let s = a * matrix::norm(&c) * matrix::norm(&d);
        worst = worst
            .max(scalar_dev(t.gram, t.polarized, s))
            .max(scalar_dev(t.polarized, t.projected, s));
    }
    let ga = dev(&b.g, &b.q.scale_real(a), &[&b.g]);
    let gpa = dev(&b.g_pinv, &b.q.scale_real(1.0 / a), &[&b.g_pinv]);
    CheckRecord::measured("polarization", worst.max(ga).max(gpa), tol.identity_abs)
        .with_detail(format!("{trials} random (c, d) pairs, A = {a:.17e}"))
}

fn sampling_record(
    frame: &FrameSequence,
    b: &OperatorBundle,
    samples: usize,
    rng: &mut FrameRng,
) -> Result<CheckRecord> {
    let bounds = b.frame_bounds()?;
    let Some(env) = rayleigh_envelope(frame, samples, rng) else {
        return Err(Error::DegenerateSpan);
    };
    let (a, bb) = (bounds.lower, bounds.upper);
    let slack = SAMPLING_SLACK;
    let contained = env.min_ratio >= a - slack && env.max_ratio <= bb + slack;
    let gap = (env.min_ratio / a - 1.0).max(1.0 - env.max_ratio / bb).max(0.0);
    let approach_required =
        env.basis_dim <= APPROACH_MAX_DIM && env.samples >= APPROACH_MIN_SAMPLES;
    let detail = format!(
        "{} samples on dim {}: [{:.17e}, {:.17e}] vs [A, B] = [{:.17e}, {:.17e}]",
        env.samples, env.basis_dim, env.min_ratio, env.max_ratio, a, bb
    );
    let mut rec = if approach_required {
        CheckRecord::measured("bounds_vs_sampling", gap, APPROACH_REL)
    } else {
        let outside = (a - env.min_ratio).max(env.max_ratio - bb).max(0.0);
        CheckRecord::measured("bounds_vs_sampling", outside, slack)
    };
    if !contained || env.basis_dim != b.span_dim() {
        rec.status = CheckStatus::Fail;
    }
    Ok(rec.with_detail(detail))
}

/// Runs every registered check with the default [`SuiteConfig`].
pub fn run_identity_suite(frame: &FrameSequence, tol: &Tolerance) -> Result<IdentityReport> {
    run_identity_suite_with(frame, tol, &SuiteConfig::default())
}

pub fn run_identity_suite_with(
    frame: &FrameSequence,
    tol: &Tolerance,
    config: &SuiteConfig,
) -> Result<IdentityReport> {
    let bundle = OperatorBundle::build(frame, tol)?;
    let bounds = bundle.frame_bounds().ok();
    let dual = match bounds {
        Some(_) => {
            let dual = bundle.canonical_dual()?;
            let d = OperatorBundle::build(&dual, tol)?;
            Some((dual, d))
        }
        None => None,
    };
    let mut runner = Runner {
        frame,
        b: &bundle,
        dual,
        bounds,
        tol: *tol,
        norm_rel: norm_tolerance(tol),
        config: *config,
        rng: FrameRng::new(config.seed),
        records: Vec::with_capacity(REGISTRY.len()),
    };
    runner.run()?;
    let checks = runner.records;
    debug_assert_eq!(checks.len(), REGISTRY.len());
    let passed = checks.iter().all(CheckRecord::passed);
    Ok(IdentityReport {
        ambient_dim: bundle.ambient_dim(),
        len: bundle.len(),
        span_dim: bundle.span_dim(),
        identity_abs: tol.identity_abs,
        norm_rel: norm_tolerance(tol),
        checks,
        passed,
    })
}

/// Polarization reconstruction of `<G c, d>` on random pairs, plus the
/// tight-frame laws `G = A Q` and `G^dagger = Q / A`.
pub fn polarization_check(frame: &FrameSequence, trials: usize, tol: &Tolerance) -> Result<CheckRecord> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let b = OperatorBundle::build(frame, tol)?;
    let bounds = b.frame_bounds()?;
    if !bounds.tight {
        return Err(Error::NotTight {
            excess: bounds.ratio() - 1.0,
        });
    }
    let mut rng = FrameRng::new(SuiteConfig::default().seed);
    Ok(polarization_record(&b, &bounds, trials, &mut rng, tol))
}

/// Sampled envelope of `|T^* f|^2` over unit `f` in `V` against `[A, B]`.
pub fn bounds_vs_sampling(frame: &FrameSequence, samples: usize, tol: &Tolerance) -> Result<CheckRecord> {
    let b = OperatorBundle::build(frame, tol)?;
    if b.span_dim() == 0 {
        return Err(Error::DegenerateSpan);
    }
    let mut rng = FrameRng::new(SuiteConfig::default().seed);
    sampling_record(frame, &b, samples, &mut rng)
}
