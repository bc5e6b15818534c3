use super::closed_form::{eval_a, eval_b};
use super::envelope::{default_horizon, envelopes, EnvelopeConstants};
use crate::error::{Error, Result};
use crate::trace::Trace;

/// Which envelope a trace row left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum EnvelopeKind {
    A,
    B,
    Zeta,
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct EnvelopeViolation {
    pub i: usize,
    pub kind: EnvelopeKind,
    /// `|e_a|`, `|e_b|` or `ζ`.
    pub value: f64,
    pub bound: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeOptions {
    /// Rows with `i >= horizon` are not checked.
    pub horizon: f64,
    /// `g_a / f_a`: lower edge of the critical interval for `e_a`.
    pub critical_ratio: f64,
}

impl EnvelopeOptions {
    /// Horizon `n - n^{3/5} ln n` and critical ratio `3/4`.
    pub fn for_n(n: usize) -> Self {
        Self { horizon: default_horizon(n), critical_ratio: 0.75 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
pub struct EnvelopeReport {
    pub rows_checked: usize,
    pub first_violation: Option<EnvelopeViolation>,
    pub violations_a: usize,
    pub violations_b: usize,
    pub violations_zeta: usize,
    /// Largest `|e_a| / f_a` over checked rows.
    pub max_ratio_a: f64,
    pub max_ratio_b: f64,
    pub max_ratio_zeta: f64,
    /// Rows with `e_a` inside the critical interval `[g_a, f_a]`.
    pub critical_rows: usize,
}

impl EnvelopeReport {
    pub fn violations(&self) -> usize {
        self.violations_a + self.violations_b + self.violations_zeta
    }
}

/// Compares a trace against the envelopes: `|A - n a(t) - α| <= f_a`,
/// `|B - n b(t)| <= f_b` and `ζ <= f_ζ` on every row before the horizon.
pub fn envelope_check(trace: &Trace, constants: &EnvelopeConstants<f64>, options: &EnvelopeOptions) -> Result<EnvelopeReport> {
    let n = trace.n as f64;
    let mut report = EnvelopeReport::default();
    for row in &trace.rows {
        if row.i as f64 >= options.horizon || row.i >= trace.n {
            continue;
        }
        let alpha = row.alpha.ok_or(Error::MissingAlpha)?;
        let t = row.i as f64 / n;
        let env = envelopes(t, n, constants);
        let e_a = row.state.a as f64 - n * eval_a(t)? - alpha;
        let e_b = row.state.b as f64 - n * eval_b(t);
        let zeta = row.state.zeta as f64;
        report.rows_checked += 1;
        if e_a >= options.critical_ratio * env.f_a && e_a <= env.f_a {
            report.critical_rows += 1;
        }
        let checks = [
            (EnvelopeKind::A, e_a.abs(), env.f_a),
            (EnvelopeKind::B, e_b.abs(), env.f_b),
            (EnvelopeKind::Zeta, zeta, env.f_zeta),
        ];
        for (kind, value, bound) in checks {
            let ratio = value / bound;
            let (max, count) = match kind {
                EnvelopeKind::A => (&mut report.max_ratio_a, &mut report.violations_a),
                EnvelopeKind::B => (&mut report.max_ratio_b, &mut report.violations_b),
                EnvelopeKind::Zeta => (&mut report.max_ratio_zeta, &mut report.violations_zeta),
            };
            *max = max.max(ratio);
            if value > bound {
                *count += 1;
                if report.first_violation.is_none() {
                    report.first_violation = Some(EnvelopeViolation { i: row.i, kind, value, bound });
                }
            }
        }
    }
    Ok(report)
}
