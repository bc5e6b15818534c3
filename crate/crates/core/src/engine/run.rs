use super::components::{count_components, ComponentCounts};
use super::state::{Counters, Engine, Priority};
use super::{Deletion, Sigma, StepRecord};
use crate::error::{Error, Result};
use crate::pairing::{FixedPairing, LazyPairing, PairingSource};
use crate::trace::{Trace, TraceRow};
use crate::trajectory::AlphaTracker;

/// Which steps are written to the trace.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Stride {
    /// Every step up to `n = 10^5`, every `⌈n / 10^5⌉`-th step above.
    #[default]
    Auto,
    Every(usize),
}

impl Stride {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Stride::Auto => n.div_ceil(100_000).max(1),
            Stride::Every(k) => k.max(1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub stride: Stride,
    /// Build the trace. Steps with `δ = ζ`, `σ = loop` or `σ = multi` are
    /// always written, whatever the stride.
    pub keep_trace: bool,
    /// Fill the `α` column, advancing the recursion at every step.
    pub track_alpha: bool,
    /// Keep every [`StepRecord`].
    pub keep_steps: bool,
    /// Run the full O(n) audit after every this many steps.
    pub validate_every: Option<usize>,
    /// Condition on a simple graph by rejection sampling the whole pairing.
    pub simple_only: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            stride: Stride::Auto,
            keep_trace: true,
            track_alpha: true,
            keep_steps: false,
            validate_every: None,
            simple_only: false,
        }
    }
}

impl RunOptions {
    /// No trace, no `α`: only the final matching and the counters.
    pub fn counters_only() -> Self {
        Self { keep_trace: false, track_alpha: false, ..Self::default() }
    }
}

/// The 2-regular graph left when the priority phases end.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ResidualStats {
    pub vertices: usize,
    pub cycles: usize,
    pub odd_cycles: usize,
    /// Cycles of length one.
    pub loops: usize,
    /// Cycles of length two.
    pub double_edges: usize,
    /// Edges added to `U` by the final maximum matching.
    pub matching_edges: usize,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub n: usize,
    pub seed: u64,
    /// The final 2-matching `U`; parallel edges allowed.
    pub edges: Vec<(u32, u32)>,
    pub components: ComponentCounts,
    pub counters: Counters,
    pub residual: ResidualStats,
    pub steps: usize,
    pub exposures: usize,
    /// Pairings drawn until a simple one was found; 1 unless `simple_only`.
    pub simple_attempts: usize,
    pub trace: Option<Trace>,
    pub records: Vec<StepRecord>,
}

impl RunResult {
    pub fn kappa(&self) -> usize {
        self.components.kappa
    }

    /// Path components, single vertices included.
    pub fn path_type_components(&self) -> usize {
        self.components.paths + self.components.singletons
    }

    /// Whether path-type components are at most
    /// `Σ 1{δ=ζ} + (odd residual cycles) + 2`.
    pub fn path_bound_holds(&self) -> bool {
        self.path_type_components() <= self.counters.deletion_zeta + self.residual.odd_cycles + 2
    }

    pub fn summary(&self) -> RunSummary {
        RunSummary {
            version: crate::VERSION.to_string(),
            rng: crate::RNG_ID.to_string(),
            n: self.n,
            seed: self.seed,
            kappa: self.components.kappa,
            paths: self.components.paths,
            cycles: self.components.cycles,
            singletons: self.components.singletons,
            u_edges: self.edges.len(),
            deletion_zeta: self.counters.deletion_zeta,
            loop_events: self.counters.loop_events,
            zeta_loops: self.counters.zeta_loops,
            multi_events: self.counters.multi_events,
            cycles_closed: self.counters.cycles_closed,
            residual_cycles: self.residual.cycles,
            residual_odd_cycles: self.residual.odd_cycles,
            max_zeta: self.counters.max_zeta,
            steps: self.steps,
            exposures: self.exposures,
            simple_attempts: self.simple_attempts,
        }
    }
}

/// One-line description of a run.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct RunSummary {
    pub version: String,
    pub rng: String,
    pub n: usize,
    pub seed: u64,
    pub kappa: usize,
    pub paths: usize,
    pub cycles: usize,
    pub singletons: usize,
    pub u_edges: usize,
    pub deletion_zeta: usize,
    pub loop_events: usize,
    pub zeta_loops: usize,
    pub multi_events: usize,
    pub cycles_closed: usize,
    pub residual_cycles: usize,
    pub residual_odd_cycles: usize,
    pub max_zeta: i64,
    pub steps: usize,
    pub exposures: usize,
    pub simple_attempts: usize,
}

/// Runs the greedy to completion on a fresh configuration drawn from `seed`.
pub fn run(n: usize, seed: u64, options: &RunOptions) -> Result<RunResult> {
    if options.simple_only {
        let (source, attempts) = FixedPairing::simple_from_seed(n, seed)?;
        let mut result = run_with_source(source, seed, options)?;
        result.simple_attempts = attempts;
        Ok(result)
    } else {
        run_with_source(LazyPairing::new(n, seed)?, seed, options)
    }
}

/// Runs the greedy to completion on any pairing source. `seed` is only
/// recorded.
pub fn run_with_source<S: PairingSource>(source: S, seed: u64, options: &RunOptions) -> Result<RunResult> {
    run_returning_source(source, seed, options).map(|(result, _)| result)
}

/// [`run_with_source`], handing the exhausted source back.
pub fn run_returning_source<S: PairingSource>(source: S, seed: u64, options: &RunOptions) -> Result<(RunResult, S)> {
    let mut engine = Engine::new(source);
    let n = engine.n();
    let stride = options.stride.resolve(n);
    let mut alpha = options.track_alpha.then(|| AlphaTracker::new(n));
    let mut trace = options.keep_trace.then(|| Trace::new(n, seed));
    let mut records = Vec::new();
    if let Some(k) = options.validate_every {
        engine.validate()?;
        if k == 0 {
            return Err(Error::Config("validation period must be positive".into()));
        }
    }

    while !matches!(engine.priority(), Priority::Done2Regular | Priority::DoneEmpty) {
        let alpha_now = alpha.as_ref().map(AlphaTracker::value);
        let rec = engine.step()?;
        if let Some(tr) = alpha.as_mut() {
            if tr.advance(rec.before.zeta).is_err() {
                alpha = None;
            }
        }
        if let Some(tr) = trace.as_mut() {
            let forced = rec.delta == Some(Deletion::Zeta) || matches!(rec.sigma, Sigma::Loop | Sigma::Multi);
            if forced || rec.i % stride == 0 {
                tr.rows.push(TraceRow {
                    i: rec.i,
                    kind: Some(rec.kind),
                    sigma: Some(rec.sigma),
                    delta: rec.delta,
                    state: rec.before,
                    alpha: alpha_now,
                });
            }
        }
        if let Some(k) = options.validate_every {
            if engine.steps() % k == 0 {
                engine.validate()?;
            }
        }
        if options.keep_steps {
            records.push(rec);
        }
    }
    if let Some(tr) = trace.as_mut() {
        tr.rows.push(TraceRow {
            i: engine.steps(),
            kind: None,
            sigma: None,
            delta: None,
            state: engine.snapshot(),
            alpha: alpha.as_ref().map(AlphaTracker::value),
        });
    }

    let residual = engine.finish()?;
    let components = count_components(engine.edges(), n)?;
    let counters = *engine.counters();
    let path_type = components.paths + components.singletons;
    // every path-type component has two ends, each left by exactly one of the
    // events on the right
    let ends = counters.deletion_zeta + residual.odd_cycles + counters.loop_events + 2 * counters.zeta_loops;
    if 2 * path_type != ends || engine.edges().len() + path_type != n {
        return Err(Error::Invariant {
            step: engine.steps(),
            detail: format!(
                "{path_type} path components but {} deletions into zeta, {} odd cycles, {} loops, {} loops at Y2; |U| = {}",
                counters.deletion_zeta,
                residual.odd_cycles,
                counters.loop_events,
                counters.zeta_loops,
                engine.edges().len()
            ),
        });
    }

    let result = RunResult {
        n,
        seed,
        edges: engine.edges().to_vec(),
        components,
        counters,
        residual,
        steps: engine.steps(),
        exposures: engine.source().exposures(),
        simple_attempts: 1,
        trace,
        records,
    };
    Ok((result, engine.into_source()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_stride() {
        assert_eq!(Stride::Auto.resolve(1000), 1);
        assert_eq!(Stride::Auto.resolve(100_000), 1);
        assert_eq!(Stride::Auto.resolve(100_002), 2);
        assert_eq!(Stride::Auto.resolve(1_000_000), 10);
        assert_eq!(Stride::Every(0).resolve(10), 1);
    }

    #[test]
    fn small_run_is_consistent() {
        let opts = RunOptions { keep_steps: true, validate_every: Some(1), ..RunOptions::default() };
        let r = run(1000, 7, &opts).unwrap();
        assert_eq!(r.exposures, 1500);
        assert_eq!(r.records.len(), r.steps);
        let trace = r.trace.as_ref().unwrap();
        assert_eq!(trace.rows.len(), r.steps + 1);
        assert_eq!(trace.rows[0].alpha, Some(0.0));
        assert!(r.kappa() >= 1);
        assert!(r.path_bound_holds());
    }

    #[test]
    fn strided_trace_keeps_rare_events() {
        let opts = RunOptions { stride: Stride::Every(50), keep_steps: true, ..RunOptions::default() };
        let r = run(2000, 3, &opts).unwrap();
        let rows = &r.trace.as_ref().unwrap().rows;
        let rare = r
            .records
            .iter()
            .filter(|s| s.delta == Some(Deletion::Zeta) || matches!(s.sigma, Sigma::Loop | Sigma::Multi))
            .count();
        let kept_rare = rows
            .iter()
            .filter(|s| s.delta == Some(Deletion::Zeta) || matches!(s.sigma, Some(Sigma::Loop | Sigma::Multi)))
            .count();
        assert_eq!(rare, kept_rare);
        assert!(rows.len() < r.steps / 10 + rare + 2);
    }

    #[test]
    fn simple_only_runs_on_simple_graphs() {
        let opts = RunOptions { simple_only: true, ..RunOptions::counters_only() };
        let r = run(500, 11, &opts).unwrap();
        assert!(r.simple_attempts >= 1);
        assert_eq!(r.counters.loop_events, 0);
        assert_eq!(r.residual.loops, 0);
    }

    #[test]
    fn same_seed_same_result() {
        let a = run(3000, 5, &RunOptions::default()).unwrap();
        let b = run(3000, 5, &RunOptions::default()).unwrap();
        assert_eq!(a.edges, b.edges);
        assert_eq!(a.trace, b.trace);
    }
}
