use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} is odd: 3n points cannot be perfectly paired")]
    OddVertexCount(usize),

    #[error("vertex count must be at least 2, got {0}")]
    TooFewVertices(usize),

    #[error("invariant violated at step {step}: {detail}")]
    Invariant { step: usize, detail: String },

    #[error("invalid 2-matching: {0}")]
    InvalidMatching(String),

    #[error("t = {0} lies outside [0, 1]")]
    OutOfDomain(f64),

    #[error("integration step must be positive, got {0}")]
    BadStepSize(f64),

    #[error("t_end = {t_end} is closer to 1 than 10 steps of size {h}")]
    TooCloseToSingularity { t_end: f64, h: f64 },

    #[error("trace has no alpha column")]
    MissingAlpha,

    #[error("malformed trace: {0}")]
    MalformedTrace(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("run at n = {n} with seed {seed} failed: {source}")]
    RunFailed {
        n: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True when the error signals a broken internal invariant rather than bad
    /// input.
    pub fn is_invariant(&self) -> bool {
        match self {
            Error::Invariant { .. } | Error::InvalidMatching(_) => true,
            Error::RunFailed { source, .. } => source.is_invariant(),
            _ => false,
        }
    }
}
