use twogreedy::trajectory::{
    alpha_bound, cubic_residual, default_horizon, envelope_check, eval_a, eval_b, eval_phi, integrate_ode,
    integrate_ode_grid, EnvelopeOptions,
};
use twogreedy::{run, AlphaTracker, EnvelopeConstants, Error, RunOptions, Trace, Trajectory, TrajectoryF32};

#[test]
fn closed_form_against_runge_kutta() {
    assert!((eval_a(0.5f64).unwrap() - integrate_ode(0.5, 1e-6).unwrap()).abs() < 1e-8);
    assert!((eval_a(0.9f64).unwrap() - integrate_ode(0.9, 1e-6).unwrap()).abs() < 1e-7);
    assert_eq!(integrate_ode(0.0, 1e-6).unwrap(), 1.0);
}

#[test]
fn runge_kutta_limit_ratio() {
    let eps: f64 = 1e-4;
    let r = integrate_ode(1.0 - eps, 1e-6).unwrap() / eps.powf(1.5);
    assert!((r - (2.0f64 / 3.0).powf(1.5)).abs() < 1e-2, "{r}");
}

#[test]
fn runge_kutta_step_validation() {
    assert!(matches!(integrate_ode(0.5, 0.0), Err(Error::BadStepSize(_))));
    assert!(matches!(integrate_ode(0.99999, 1e-5), Err(Error::TooCloseToSingularity { .. })));
}

#[test]
fn grid_discrepancy_up_to_near_one() {
    let ts: Vec<f64> = (0..=1000).map(|k| 0.9999 * k as f64 / 1000.0).collect();
    let ode = integrate_ode_grid(&ts, 1e-6).unwrap();
    let worst = ts.iter().zip(&ode).map(|(&t, &a)| (eval_a(t).unwrap() - a).abs()).fold(0.0, f64::max);
    assert!(worst <= 1e-6, "{worst}");
}

#[test]
fn residual_and_bounds_on_grid() {
    let m = Trajectory::new();
    let mut prev = f64::INFINITY;
    for k in 0..=10_000 {
        let t = k as f64 / 10_000.0;
        let a = m.a(t).unwrap();
        assert!(cubic_residual(t, a).abs() <= 1e-9);
        assert!(m.lower_bound(t) <= a && a <= m.upper_bound(t), "t = {t}");
        if t < 1.0 {
            let r = a / (1.0 - t).powf(1.5);
            assert!(r <= prev * (1.0 + 1e-12), "ratio rose at t = {t}");
            prev = r;
        }
    }
}

#[test]
fn drift_examples() {
    assert!((eval_phi(0.0f64).unwrap() - 1.0).abs() < 1e-14);
    let eps: f64 = 1e-6;
    assert!((eval_phi(1.0 - eps).unwrap() / eps - 1.0 / 6.0).abs() < 1e-3);
    assert_eq!(eval_phi(1.0).unwrap(), 0.0);
    assert!(eval_phi(1.5).is_err());
}

#[test]
fn single_precision_model() {
    let m = TrajectoryF32::new();
    assert!((m.a(0.0).unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(m.b(0.25), 1.5);
    assert!((m.phi(0.5).unwrap() as f64 - eval_phi(0.5).unwrap()).abs() < 1e-5);
    assert_eq!(eval_b(1.0f32), 0.0);
}

fn traced_run(n: usize, seed: u64) -> Trace {
    run(n, seed, &RunOptions::default()).unwrap().trace.unwrap()
}

#[test]
fn envelope_errors_vanish_at_start() {
    let trace = traced_run(10_000, 2);
    let row = &trace.rows[0];
    assert_eq!(row.i, 0);
    let n = trace.n as f64;
    assert_eq!(row.state.a as f64 - n * eval_a(0.0).unwrap() - row.alpha.unwrap(), 0.0);
    assert_eq!(row.state.b as f64 - n * eval_b(0.0), 0.0);
}

#[test]
fn alpha_is_nonnegative_and_bounded_at_large_n() {
    let n = 1_000_000;
    let trace = traced_run(n, 3);
    let c = EnvelopeConstants::default();
    let nn = n as f64;
    let cut = nn - nn.powf(0.6) * nn.ln().powf(0.4);
    for row in &trace.rows {
        let Some(alpha) = row.alpha else { continue };
        assert!(alpha >= 0.0, "alpha({}) = {alpha}", row.i);
        if (row.i as f64) <= cut {
            assert!(alpha <= alpha_bound(row.i, n, &c), "alpha({}) = {alpha}", row.i);
        }
    }
}

#[test]
fn alpha_tracker_replays_trace_column() {
    let trace = traced_run(5_000, 4);
    let mut tracker = AlphaTracker::new(trace.n);
    let steps: Vec<_> = trace.rows.iter().filter(|r| r.kind.is_some()).collect();
    for row in &steps {
        assert_eq!(tracker.step(), row.i);
        assert_eq!(Some(tracker.value()), row.alpha);
        tracker.advance(row.state.zeta).unwrap();
    }
}

#[test]
fn envelope_check_paper_constants_and_shrunken_constants() {
    let trace = traced_run(200_000, 5);
    let opts = EnvelopeOptions::for_n(trace.n);
    assert_eq!(opts.horizon, default_horizon::<f64>(trace.n));
    let paper = envelope_check(&trace, &EnvelopeConstants::default(), &opts).unwrap();
    assert_eq!(paper.violations(), 0);
    assert!(paper.rows_checked > 0);
    let shrunk = EnvelopeConstants::default().scaled(0.01);
    let tight = envelope_check(&trace, &shrunk, &opts).unwrap();
    assert!(tight.violations() > 0);
    assert!(tight.first_violation.is_some());
}

#[test]
fn envelope_check_requires_alpha() {
    let options = RunOptions { track_alpha: false, ..RunOptions::default() };
    let trace = run(1_000, 1, &options).unwrap().trace.unwrap();
    let r = envelope_check(&trace, &EnvelopeConstants::default(), &EnvelopeOptions::for_n(1_000));
    assert!(matches!(r, Err(Error::MissingAlpha)));
}

#[test]
fn trace_csv_round_trip_from_run() {
    let trace = traced_run(3_000, 9);
    let mut buf = Vec::new();
    trace.write_csv(&mut buf).unwrap();
    let back = Trace::read_csv(&buf[..]).unwrap();
    assert_eq!(back.n, trace.n);
    assert_eq!(back.seed, 9);
    assert_eq!(back.rows.len(), trace.rows.len());
    for (x, y) in back.rows.iter().zip(&trace.rows) {
        assert_eq!(x.state, y.state);
        assert_eq!(x.alpha, y.alpha);
    }
}
