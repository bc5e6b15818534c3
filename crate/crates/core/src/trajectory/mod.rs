//! Deterministic objects of the fluid limit: the trajectories `a(t)` and
//! `b(t)`, the drift `Φ(t)`, the error envelopes, the `α` correction and an
//! independent Runge-Kutta oracle for `a`.
//!
//! Everything here is generic over [`Scalar`](crate::Scalar); logarithms are
//! natural.

mod alpha;
mod check;
mod closed_form;
mod envelope;
mod ode;

pub use alpha::{alpha_step, AlphaTracker};
pub use check::{envelope_check, EnvelopeKind, EnvelopeOptions, EnvelopeReport, EnvelopeViolation};
pub use closed_form::{cubic_residual, eval_a, eval_b, eval_phi, limit_ratio, TrajectoryModel};
pub use envelope::{
    alpha_bound, branch_threshold, default_horizon, envelopes, stopping_horizon, Condition, EnvelopeConstants,
    Envelopes,
};
pub use ode::{a_prime, integrate_ode, integrate_ode_grid, rk4_step};
