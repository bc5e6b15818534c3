//! Simulation laboratory for the 2-matching greedy algorithm on random cubic
//! multigraphs.
//!
//! The crate is organised around five pieces:
//!
//! * [`pairing`] lazily exposes a uniformly random configuration on `3n`
//!   points, one partner at a time.
//! * [`engine`] runs the priority-driven greedy (`Y1, Y2, Z1, Y, Z`) on top of
//!   a pairing source and records every step's selection/deletion events.
//! * [`trajectory`] evaluates the deterministic limits `a(t)`, `b(t)`, the
//!   drift `Φ(t)`, the error envelopes and the `α` correction, generic over
//!   the float type.
//! * [`experiments`] orchestrates multi-run scans and fits the growth exponent
//!   of the component count.
//! * [`oracle`] enumerates every pairing and every random branch for tiny `n`.
//!
//! Floating point code is written against [`Scalar`]; the aliases below pin the
//! common instantiations.

pub mod engine;
pub mod error;
pub mod experiments;
pub mod oracle;
pub mod pairing;
pub mod scalar;
pub mod stats;
pub mod trace;
pub mod trajectory;

pub use engine::{
    count_components, run, ComponentCounts, Engine, EngineState, Priority, RunOptions, RunResult,
    RunSummary, Sigma, Snapshot, StepKind, StepRecord, Stride, Deletion, VertexClass,
};
pub use error::{Error, Result};
pub use pairing::{FixedPairing, LazyPairing, PairingSource, PointId, Simplicity, VertexId};
pub use scalar::Scalar;
pub use trace::{Trace, TraceRow};

/// Deterministic trajectories in double precision.
pub type Trajectory = trajectory::TrajectoryModel<f64>;
/// Deterministic trajectories in single precision.
pub type TrajectoryF32 = trajectory::TrajectoryModel<f32>;
/// Envelope constants in double precision.
pub type EnvelopeConstants = trajectory::EnvelopeConstants<f64>;
/// Envelope values in double precision.
pub type Envelopes = trajectory::Envelopes<f64>;
/// `α` recursion in double precision.
pub type AlphaTracker = trajectory::AlphaTracker<f64>;

/// Identifier of the random stream, written into every output header.
pub const RNG_ID: &str = "ChaCha8Rng/rand_chacha-0.9/seed_from_u64";

/// Crate version, written into every output header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
