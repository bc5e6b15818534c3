//! Exact and sampled checks of the greedy on very small configurations.
//!
//! [`exhaustive`] runs the algorithm on every perfect pairing of the `3n`
//! points and, for each, on every sequence of its own random choices, so the
//! distribution of the outcome is obtained exactly rather than estimated.

use std::collections::BTreeMap;

use crate::engine::{run, run_returning_source, RunOptions, RunResult};
use crate::error::{Error, Result};
use crate::pairing::{all_pairings, FixedPairing, ScriptedChooser};

/// Largest `n` [`exhaustive`] accepts: `3n = 12` points have 10395 pairings.
pub const MAX_EXHAUSTIVE_N: usize = 4;

fn checked_options() -> RunOptions {
    RunOptions { validate_every: Some(1), ..RunOptions::counters_only() }
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub pairings: usize,
    /// Runs executed: one per (pairing, choice sequence).
    pub branches: usize,
    /// Failed runs; each is an invariant violation or an invalid 2-matching.
    pub violations: usize,
    pub first_violation: Option<String>,
    /// Exact law of the component count.
    pub kappa_distribution: BTreeMap<usize, f64>,
    /// Number of pairings with a given number of loops.
    pub loop_histogram: BTreeMap<usize, usize>,
    /// Total probability over all branches; 1 up to rounding.
    pub total_probability: f64,
}

impl ExhaustiveReport {
    pub fn kappa_mean(&self) -> f64 {
        self.kappa_distribution.iter().map(|(k, p)| *k as f64 * p).sum()
    }
}

fn loops_of(partner: &[u32]) -> usize {
    partner.iter().enumerate().filter(|&(p, &q)| p < q as usize && p / 3 == q as usize / 3).count()
}

/// Every pairing of `3n` points times every branch of the algorithm.
pub fn exhaustive(n: usize) -> Result<ExhaustiveReport> {
    if n > MAX_EXHAUSTIVE_N || n < 2 || n % 2 == 1 {
        return Err(Error::Config(format!("exhaustive enumeration needs n in {{2, 4}}, got {n}")));
    }
    let pairings = all_pairings(3 * n);
    let weight = 1.0 / pairings.len() as f64;
    let mut report = ExhaustiveReport { n, pairings: pairings.len(), ..Default::default() };
    let options = checked_options();
    for partner in &pairings {
        *report.loop_histogram.entry(loops_of(partner)).or_default() += 1;
        let mut prefix = Vec::new();
        loop {
            let source = FixedPairing::new(partner.clone(), ScriptedChooser::new(prefix))?;
            report.branches += 1;
            let mut script = match run_returning_source(source, 0, &options) {
                Ok((result, source)) => {
                    let script = source.into_chooser().into_script();
                    let p = script.iter().fold(weight, |acc, &(_, len)| acc / len as f64);
                    report.total_probability += p;
                    *report.kappa_distribution.entry(result.kappa()).or_default() += p;
                    script
                }
                Err(e) => {
                    // the branch cannot be continued; record it and move on
                    // to the next pairing
                    report.violations += 1;
                    report.first_violation.get_or_insert_with(|| e.to_string());
                    break;
                }
            };
            let mut advanced = false;
            while let Some((choice, len)) = script.pop() {
                if choice + 1 < len {
                    script.push((choice + 1, len));
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
            prefix = script;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct MonteCarloReport {
    pub n: usize,
    pub trials: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
    /// Empirical law of the component count.
    pub kappa_distribution: BTreeMap<usize, f64>,
}

/// Seeded runs `seed, seed + 1, ...` with the full audit after every step.
pub fn monte_carlo(n: usize, trials: usize, seed: u64) -> Result<MonteCarloReport> {
    if trials == 0 {
        return Err(Error::Config("at least one trial is needed".into()));
    }
    let options = checked_options();
    let mut report = MonteCarloReport { n, trials, ..Default::default() };
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..trials as u64 {
        let outcome: Result<RunResult> = run(n, seed.wrapping_add(k), &options);
        match outcome {
            Ok(r) => *counts.entry(r.kappa()).or_default() += 1,
            Err(e) if e.is_invariant() => {
                report.violations += 1;
                report.first_violation.get_or_insert_with(|| e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    report.kappa_distribution = counts.into_iter().map(|(k, c)| (k, c as f64 / trials as f64)).collect();
    Ok(report)
}
