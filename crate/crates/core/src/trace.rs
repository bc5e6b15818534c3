//! Per-step time series of the tracked variables, with a CSV round trip.
//!
//! The CSV starts with one comment line carrying the run's identity:
//!
//! ```text
//! # twogreedy trace version=0.1.0 n=1000 seed=7 rng=ChaCha8Rng/rand_chacha-0.9/seed_from_u64
//! i,t,step_type,sigma,delta,Y,Z,zeta,A,B,M,alpha
//! ```
//!
//! Row `i` holds the state before step `i` together with that step's events
//! and `α(i)`; the last row, of type `end`, holds the state once the priority
//! phases are over.

use std::io::{BufRead, Read, Write};

use crate::engine::{Deletion, Sigma, Snapshot, StepKind};
use crate::error::{Error, Result};

pub const COLUMNS: [&str; 12] = ["i", "t", "step_type", "sigma", "delta", "Y", "Z", "zeta", "A", "B", "M", "alpha"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRow {
    pub i: usize,
    /// `None` on the closing row.
    pub kind: Option<StepKind>,
    pub sigma: Option<Sigma>,
    pub delta: Option<Deletion>,
    pub state: Snapshot,
    pub alpha: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub n: usize,
    pub seed: u64,
    pub rng: String,
    pub version: String,
    pub rows: Vec<TraceRow>,
}

impl Trace {
    pub fn new(n: usize, seed: u64) -> Self {
        Self { n, seed, rng: crate::RNG_ID.to_string(), version: crate::VERSION.to_string(), rows: Vec::new() }
    }

    pub fn has_alpha(&self) -> bool {
        self.rows.iter().all(|r| r.alpha.is_some())
    }

    pub fn header_line(&self) -> String {
        format!("# twogreedy trace version={} n={} seed={} rng={}", self.version, self.n, self.seed, self.rng)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", self.header_line())?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COLUMNS)?;
        let n = self.n as f64;
        for r in &self.rows {
            let s = &r.state;
            w.write_record([
                r.i.to_string(),
                (r.i as f64 / n).to_string(),
                r.kind.map_or("end", StepKind::as_str).to_string(),
                r.sigma.map_or("none", Sigma::as_str).to_string(),
                r.delta.map_or("none", Deletion::as_str).to_string(),
                s.y.to_string(),
                s.z.to_string(),
                s.zeta.to_string(),
                s.a.to_string(),
                s.b.to_string(),
                s.m.to_string(),
                r.alpha.map(|a| a.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Trace> {
        let mut input = std::io::BufReader::new(input);
        let mut first = String::new();
        input.read_line(&mut first)?;
        let mut trace = parse_header(first.trim_end())?;
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let headers = rd.headers()?.clone();
        if headers.iter().ne(COLUMNS.iter().copied()) {
            return Err(Error::MalformedTrace(format!("unexpected columns {headers:?}")));
        }
        for rec in rd.records() {
            let rec = rec?;
            let int = |k: usize| -> Result<i64> {
                rec[k].parse().map_err(|_| Error::MalformedTrace(format!("bad {} value {:?}", COLUMNS[k], &rec[k])))
            };
            let kind = match &rec[2] {
                "end" => None,
                s => Some(StepKind::parse(s).ok_or_else(|| Error::MalformedTrace(format!("bad step type {s:?}")))?),
            };
            let sigma = match &rec[3] {
                "none" => None,
                s => Some(Sigma::parse(s).ok_or_else(|| Error::MalformedTrace(format!("bad sigma {s:?}")))?),
            };
            let delta = match &rec[4] {
                "none" => None,
                s => Some(Deletion::parse(s).ok_or_else(|| Error::MalformedTrace(format!("bad delta {s:?}")))?),
            };
            let alpha = match &rec[11] {
                "" => None,
                s => Some(s.parse().map_err(|_| Error::MalformedTrace(format!("bad alpha {s:?}")))?),
            };
            trace.rows.push(TraceRow {
                i: int(0)? as usize,
                kind,
                sigma,
                delta,
                state: Snapshot { y: int(5)?, z: int(6)?, zeta: int(7)?, a: int(8)?, b: int(9)?, m: int(10)? },
                alpha,
            });
        }
        Ok(trace)
    }
}

fn parse_header(line: &str) -> Result<Trace> {
    let body = line
        .strip_prefix("# twogreedy trace")
        .ok_or_else(|| Error::MalformedTrace(format!("missing header line, found {line:?}")))?;
    let mut trace = Trace::new(0, 0);
    for field in body.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::MalformedTrace(format!("bad header field {field:?}")))?;
        let bad = || Error::MalformedTrace(format!("bad header value {field:?}"));
        match key {
            "version" => trace.version = value.to_string(),
            "n" => trace.n = value.parse().map_err(|_| bad())?,
            "seed" => trace.seed = value.parse().map_err(|_| bad())?,
            "rng" => trace.rng = value.to_string(),
            _ => {}
        }
    }
    if trace.n == 0 {
        return Err(Error::MalformedTrace("header lacks n".into()));
    }
    Ok(trace)
}
