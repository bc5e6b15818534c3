use std::io::Write;

use rayon::prelude::*;

use crate::engine::{run, RunOptions, RunSummary};
use crate::error::{Error, Result};
use crate::stats::{mean, median, ols, sample_sd};
use crate::trajectory::{default_horizon, envelope_check, stopping_horizon, EnvelopeConstants, EnvelopeOptions, EnvelopeReport};

/// Where envelope checks stop.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HorizonPolicy {
    /// `n - n^{3/5} ln n`.
    #[default]
    Desk,
    /// `n - C_T n^{7/15} ln^{6/5} n` with the default constants.
    Theorem,
    /// A fixed fraction of `n`.
    Fraction(f64),
}

impl HorizonPolicy {
    pub fn horizon(self, n: usize) -> f64 {
        match self {
            HorizonPolicy::Desk => default_horizon(n),
            HorizonPolicy::Theorem => stopping_horizon(n, &EnvelopeConstants::default()),
            HorizonPolicy::Fraction(f) => f * n as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ScanConfig {
    pub n_grid: Vec<usize>,
    pub runs_per_n: usize,
    pub base_seed: u64,
    pub simple_only: bool,
    pub horizon: HorizonPolicy,
    /// Record traces and compare them with the envelopes.
    pub check_envelopes: bool,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl ScanConfig {
    pub fn new(n_grid: Vec<usize>, runs_per_n: usize, base_seed: u64) -> Self {
        Self {
            n_grid,
            runs_per_n,
            base_seed,
            simple_only: false,
            horizon: HorizonPolicy::Desk,
            check_envelopes: false,
            jobs: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(Error::Config("the n grid is empty".into()));
        }
        if self.runs_per_n == 0 {
            return Err(Error::Config("runs per n must be at least 1".into()));
        }
        if let Some(&n) = self.n_grid.iter().find(|&&n| n % 2 == 1 || n < 2) {
            return Err(Error::Config(format!("grid value {n} is not an even n >= 2")));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("the n grid must be strictly increasing".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("at least one worker is needed".into()));
        }
        Ok(())
    }
}

/// SplitMix64 finaliser.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of run `k` at size `n`: the base seed combined with `(n, k)` and
/// passed through a SplitMix64 round, so nearby bases, sizes and indices give
/// unrelated streams.
pub fn derive_seed(base: u64, n: usize, k: usize) -> u64 {
    mix(base ^ mix((n as u64).rotate_left(32) ^ k as u64))
}

/// One run of a scan.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct RunOutcome {
    pub summary: RunSummary,
    pub envelope: Option<EnvelopeReport>,
    /// Path-type components against `Σ 1{δ=ζ} + odd cycles + 2`.
    pub path_bound_holds: bool,
}

/// Aggregates at one `n`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PerN {
    pub n: usize,
    pub runs: usize,
    pub kappa_mean: f64,
    pub kappa_median: f64,
    pub kappa_sd: Option<f64>,
    pub del_zeta_mean: f64,
    pub del_zeta_median: f64,
    pub del_zeta_sd: Option<f64>,
    pub cycles_mean: f64,
    pub cycles_median: f64,
    pub cycles_sd: Option<f64>,
    pub max_zeta_mean: f64,
    pub max_zeta_median: f64,
    pub max_zeta_sd: Option<f64>,
    pub residual_odd_mean: f64,
    /// Runs with no envelope violation, when envelopes were checked.
    pub envelope_clean_runs: Option<usize>,
    pub path_bound_failures: usize,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ScanResult {
    pub config: ScanConfig,
    pub per_n: Vec<PerN>,
    /// Least squares slope of `ln(mean κ)` on `ln n`; absent below two grid
    /// points.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    /// Needs three grid points.
    pub slope_se: Option<f64>,
    pub runs: Vec<RunOutcome>,
}

fn one_run(config: &ScanConfig, n: usize, k: usize) -> Result<RunOutcome> {
    let seed = derive_seed(config.base_seed, n, k);
    let mut options = if config.check_envelopes { RunOptions::default() } else { RunOptions::counters_only() };
    options.simple_only = config.simple_only;
    let wrap = |e: Error| Error::RunFailed { n, seed, source: Box::new(e) };
    let result = run(n, seed, &options).map_err(wrap)?;
    let envelope = match &result.trace {
        Some(trace) => {
            let opts = EnvelopeOptions { horizon: config.horizon.horizon(n), critical_ratio: 0.75 };
            Some(envelope_check(trace, &EnvelopeConstants::default(), &opts).map_err(wrap)?)
        }
        None => None,
    };
    Ok(RunOutcome { summary: result.summary(), envelope, path_bound_holds: result.path_bound_holds() })
}

fn aggregate(n: usize, runs: &[RunOutcome]) -> PerN {
    let col = |f: &dyn Fn(&RunSummary) -> f64| runs.iter().map(|r| f(&r.summary)).collect::<Vec<f64>>();
    let kappa = col(&|s| s.kappa as f64);
    let del = col(&|s| s.deletion_zeta as f64);
    let cycles = col(&|s| s.cycles as f64);
    let zeta = col(&|s| s.max_zeta as f64);
    let odd = col(&|s| s.residual_odd_cycles as f64);
    let clean = runs
        .iter()
        .map(|r| r.envelope.as_ref().map(|e| (e.violations() == 0) as usize))
        .sum::<Option<usize>>();
    PerN {
        n,
        runs: runs.len(),
        kappa_mean: mean(&kappa),
        kappa_median: median(&kappa),
        kappa_sd: sample_sd(&kappa),
        del_zeta_mean: mean(&del),
        del_zeta_median: median(&del),
        del_zeta_sd: sample_sd(&del),
        cycles_mean: mean(&cycles),
        cycles_median: median(&cycles),
        cycles_sd: sample_sd(&cycles),
        max_zeta_mean: mean(&zeta),
        max_zeta_median: median(&zeta),
        max_zeta_sd: sample_sd(&zeta),
        residual_odd_mean: mean(&odd),
        envelope_clean_runs: clean,
        path_bound_failures: runs.iter().filter(|r| !r.path_bound_holds).count(),
    }
}

/// Runs `runs_per_n` independent runs at every grid size and fits the growth
/// exponent of the mean component count. The result does not depend on the
/// number of workers.
pub fn scan(config: &ScanConfig) -> Result<ScanResult> {
    config.validate()?;
    let tasks: Vec<(usize, usize)> =
        config.n_grid.iter().flat_map(|&n| (0..config.runs_per_n).map(move |k| (n, k))).collect();
    let work = || tasks.par_iter().map(|&(n, k)| one_run(config, n, k)).collect::<Result<Vec<_>>>();
    let runs = match config.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let per_n: Vec<PerN> = runs.chunks(config.runs_per_n).zip(&config.n_grid).map(|(c, &n)| aggregate(n, c)).collect();
    let xs: Vec<f64> = per_n.iter().map(|p| (p.n as f64).ln()).collect();
    let ys: Vec<f64> = per_n.iter().map(|p| p.kappa_mean.ln()).collect();
    let fit = ols(&xs, &ys);
    Ok(ScanResult {
        config: config.clone(),
        per_n,
        slope: fit.map(|f| f.slope),
        intercept: fit.map(|f| f.intercept),
        slope_se: fit.and_then(|f| f.slope_se),
        runs,
    })
}

/// The per-n table as CSV, preceded by a comment header.
pub fn scan_csv<W: Write>(result: &ScanResult, mut out: W) -> Result<()> {
    writeln!(
        out,
        "# twogreedy scan version={} base_seed={} runs_per_n={} rng={}",
        crate::VERSION,
        result.config.base_seed,
        result.config.runs_per_n,
        crate::RNG_ID
    )?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "n",
        "runs",
        "kappa_mean",
        "kappa_median",
        "kappa_sd",
        "del_zeta_mean",
        "cycles_mean",
        "max_zeta_mean",
        "residual_odd_mean",
    ])?;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for p in &result.per_n {
        w.write_record([
            p.n.to_string(),
            p.runs.to_string(),
            p.kappa_mean.to_string(),
            p.kappa_median.to_string(),
            opt(p.kappa_sd),
            p.del_zeta_mean.to_string(),
            p.cycles_mean.to_string(),
            p.max_zeta_mean.to_string(),
            p.residual_odd_mean.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(ScanConfig::new(vec![100, 200], 2, 0).validate().is_ok());
        assert!(ScanConfig::new(vec![], 2, 0).validate().is_err());
        assert!(ScanConfig::new(vec![100], 0, 0).validate().is_err());
        assert!(ScanConfig::new(vec![101], 1, 0).validate().is_err());
        assert!(ScanConfig::new(vec![200, 100], 1, 0).validate().is_err());
    }

    #[test]
    fn seeds_differ_across_runs_and_sizes() {
        let mut seen = std::collections::HashSet::new();
        for n in [100, 200, 400] {
            for k in 0..50 {
                assert!(seen.insert(derive_seed(1, n, k)));
            }
        }
        assert_ne!(derive_seed(1, 100, 0), derive_seed(2, 100, 0));
    }

    #[test]
    fn single_point_has_no_slope() {
        let r = scan(&ScanConfig::new(vec![200], 1, 3)).unwrap();
        assert_eq!(r.slope, None);
        assert_eq!(r.slope_se, None);
        assert_eq!(r.per_n[0].kappa_sd, None);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut c = ScanConfig::new(vec![200, 400, 800], 4, 9);
        c.jobs = Some(1);
        let a = scan(&c).unwrap();
        c.jobs = Some(3);
        let b = scan(&c).unwrap();
        assert_eq!(a.per_n, b.per_n);
        assert_eq!(a.slope, b.slope);
        assert!(a.slope_se.is_some());
    }
}
