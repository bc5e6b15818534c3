use super::closed_form::{eval_a, eval_b};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One step of `α(i+1) = α(i) + (4(a+b) ζ(i) - 12 b α(i)) / (n (2b - a)²)`
/// with `a, b` evaluated at `t = i/n` and `ζ(i)` the observed value.
pub fn alpha_step<T: Scalar>(alpha: T, zeta: T, t: T, n: T) -> Result<T> {
    if !(t >= T::zero() && t < T::one()) {
        return Err(Error::OutOfDomain(t.as_f64()));
    }
    let a = eval_a(t)?;
    let b = eval_b(t);
    let d = T::lit(2.0) * b - a;
    Ok(alpha + (T::lit(4.0) * (a + b) * zeta - T::lit(12.0) * b * alpha) / (n * d * d))
}

/// Running value of `α` along one run, starting from `α(0) = 0`.
#[derive(Clone, Copy, Debug)]
pub struct AlphaTracker<T> {
    value: T,
    step: usize,
    n: usize,
}

impl<T: Scalar> AlphaTracker<T> {
    pub fn new(n: usize) -> Self {
        Self { value: T::zero(), step: 0, n }
    }

    /// `α(step)`.
    pub fn value(&self) -> T {
        self.value
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// Moves from `α(i)` to `α(i+1)` given `ζ(i)`. Fails once `i/n` reaches 1.
    pub fn advance(&mut self, zeta: i64) -> Result<T> {
        let n = T::from_count(self.n);
        let t = T::from_count(self.step) / n;
        self.value = alpha_step(self.value, T::lit(zeta as f64), t, n)?;
        self.step += 1;
        Ok(self.value)
    }

    /// Advances `k` steps holding `ζ` fixed.
    pub fn advance_by(&mut self, k: usize, zeta: i64) -> Result<T> {
        for _ in 0..k {
            self.advance(zeta)?;
        }
        Ok(self.value)
    }
}
