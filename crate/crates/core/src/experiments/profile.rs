use crate::engine::Deletion;
use crate::error::{Error, Result};
use crate::trace::Trace;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ProfileBin {
    pub t_lo: f64,
    pub t_hi: f64,
    /// Steps in `[t_lo n, t_hi n)` with `δ = ζ`.
    pub count: usize,
    /// `∫ min{(1-t)^{-3/2}, n^{1/5} / (1-t)} dt` over the bin, with `1 - t`
    /// kept above `1/n`.
    pub reference: f64,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DeletionProfile {
    pub n: usize,
    pub bins: Vec<ProfileBin>,
    pub total: usize,
}

/// Antiderivative in `s = 1 - t` of `min{s^{-3/2}, c / s}` with
/// `c = n^{1/5}`, continuous at the crossover `s = c^{-2}`, as a function
/// decreasing in `s`.
fn reference_primitive(s: f64, c: f64) -> f64 {
    let cross = c.powi(-2);
    if s >= cross {
        2.0 / s.sqrt()
    } else {
        2.0 * c + c * (cross / s).ln()
    }
}

/// Counts `δ = ζ` steps of a trace in `bins` equal slices of `[0, 1]`.
/// Rows with `δ = ζ` are always present in a trace, so the counts are exact
/// whatever its stride.
pub fn deletion_profile(trace: &Trace, bins: usize) -> Result<DeletionProfile> {
    if bins == 0 {
        return Err(Error::Config("at least one bin is needed".into()));
    }
    let n = trace.n as f64;
    let c = n.powf(0.2);
    let floor = 1.0 / n;
    let mut out: Vec<ProfileBin> = (0..bins)
        .map(|k| {
            let (t_lo, t_hi) = (k as f64 / bins as f64, (k + 1) as f64 / bins as f64);
            let (s_hi, s_lo) = ((1.0 - t_lo).max(floor), (1.0 - t_hi).max(floor));
            let reference = reference_primitive(s_lo, c) - reference_primitive(s_hi, c);
            ProfileBin { t_lo, t_hi, count: 0, reference }
        })
        .collect();
    let mut total = 0;
    for row in trace.rows.iter().filter(|r| r.delta == Some(Deletion::Zeta)) {
        let k = ((row.i as f64 / n) * bins as f64) as usize;
        out[k.min(bins - 1)].count += 1;
        total += 1;
    }
    Ok(DeletionProfile { n: trace.n, bins: out, total })
}
