use crate::engine::RunSummary;
use crate::error::{Error, Result};
use crate::stats::mean;

/// Cycles of the final 2-matching against logarithmic bounds.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CycleAudit {
    pub n: usize,
    pub runs: usize,
    pub mean_cycles: f64,
    /// Cycles closed by the greedy itself, before the residual phase.
    pub mean_cycles_closed: f64,
    pub mean_residual_cycles: f64,
    pub mean_residual_odd: f64,
    /// `Σ_{j <= 3n} 1/j`.
    pub harmonic_bound: f64,
    /// `3 ln(3n)`.
    pub ceiling: f64,
    pub within_ceiling: bool,
    /// Mean above `3 ln n`.
    pub flagged: bool,
}

/// Summarises the cycle counts of at least ten runs at one `n`.
pub fn cycle_audit(runs: &[RunSummary]) -> Result<CycleAudit> {
    if runs.len() < 10 {
        return Err(Error::Config(format!("a cycle audit needs at least 10 runs, got {}", runs.len())));
    }
    let n = runs[0].n;
    if runs.iter().any(|r| r.n != n) {
        return Err(Error::Config("a cycle audit needs runs of a single size".into()));
    }
    let col = |f: fn(&RunSummary) -> usize| mean(&runs.iter().map(|r| f(r) as f64).collect::<Vec<_>>());
    let mean_cycles = col(|r| r.cycles);
    let ceiling = 3.0 * (3.0 * n as f64).ln();
    Ok(CycleAudit {
        n,
        runs: runs.len(),
        mean_cycles,
        mean_cycles_closed: col(|r| r.cycles_closed),
        mean_residual_cycles: col(|r| r.residual_cycles),
        mean_residual_odd: col(|r| r.residual_odd_cycles),
        harmonic_bound: (1..=3 * n).map(|j| 1.0 / j as f64).sum(),
        ceiling,
        within_ceiling: mean_cycles <= ceiling,
        flagged: mean_cycles > 3.0 * (n as f64).ln(),
    })
}
