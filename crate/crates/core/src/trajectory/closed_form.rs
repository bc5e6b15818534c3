use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_t<T: Scalar>(t: T) -> Result<()> {
    if t >= T::zero() && t <= T::one() {
        Ok(())
    } else {
        Err(Error::OutOfDomain(t.as_f64()))
    }
}

/// `b(t) = 2(1 - t)`.
pub fn eval_b<T: Scalar>(t: T) -> T {
    T::lit(2.0) * (T::one() - t)
}

/// `(1 - x)^{3/2} - (1 - 3x/2 + 3x²/8)`, the binomial series of
/// `(1 - x)^{3/2}` from the cubic term on. All its terms are positive for
/// `0 <= x < 1`, so it is summed without cancellation.
fn binomial_tail<T: Scalar>(x: T) -> T {
    let mut term = x * x * x / T::lit(16.0);
    let mut sum = T::zero();
    let mut k = 3.0;
    while term > T::epsilon() * sum || sum == T::zero() {
        sum = sum + term;
        if term == T::zero() {
            break;
        }
        term = term * T::lit(k - 1.5) * x / T::lit(k + 1.0);
        k += 1.0;
        if k > 400.0 {
            break;
        }
    }
    sum
}

/// The trajectory `a(t)`: the root of `(a + 2 - 2t)³ = 27 a²` in
/// `[0, (1-t)^{3/2}]`, given in closed form by
///
/// `a(t) = 7 + 2t - 6 sqrt(5 + 4t) cos(arccos((11 + 14t + 2t²) / (5 + 4t)^{3/2}) / 3 + π/3)`.
///
/// The formula is evaluated in a rearranged form that keeps full relative
/// accuracy as `t → 1`, where both the arccos argument tends to 1 (its gap is
/// `4(1-t)³/729 + ...`) and the two leading terms cancel.
pub fn eval_a<T: Scalar>(t: T) -> Result<T> {
    check_t(t)?;
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let nine = T::lit(9.0);
    let s = T::one() - t;
    let q = (nine - T::lit(4.0) * s).sqrt();
    // 1 - arccos argument, from 27 (1 - x)^{3/2} - (27 - 18 s + 2 s²) with x = 4s/9
    let gap = T::lit(27.0) * binomial_tail(T::lit(4.0) * s / nine) / (q * q * q);
    let half_gap = (gap / two).min(T::one()).max(T::zero());
    let theta = two * half_gap.sqrt().asin();
    let phi = theta / three;
    let half = (phi / two).sin();
    let a = T::lit(4.0) * s * s / (nine - two * s + three * q)
        + T::lit(6.0) * q * half * half
        + three * three.sqrt() * q * phi.sin();
    Ok(a)
}

/// `(a + 2 - 2t)³ - 27 a²`.
pub fn cubic_residual<T: Scalar>(t: T, a: T) -> T {
    let u = a + T::lit(2.0) - T::lit(2.0) * t;
    u * u * u - T::lit(27.0) * a * a
}

/// `Φ(t) = 9 a² / (2b - a)²`, the downward drift of `ζ` while it is
/// positive. Defined as its limit `0` at `t = 1`.
pub fn eval_phi<T: Scalar>(t: T) -> Result<T> {
    check_t(t)?;
    if t == T::one() {
        return Ok(T::zero());
    }
    let a = eval_a(t)?;
    let d = T::lit(2.0) * eval_b(t) - a;
    Ok(T::lit(9.0) * a * a / (d * d))
}

/// `lim a(t) / (1 - t)^{3/2} = (2/3)^{3/2}` as `t → 1`.
pub fn limit_ratio<T: Scalar>() -> T {
    (T::lit(2.0) / T::lit(3.0)).powf(T::lit(1.5))
}

/// Handle bundling the trajectory evaluators for one scalar type.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrajectoryModel<T>(PhantomData<T>);

impl<T: Scalar> TrajectoryModel<T> {
    pub const fn new() -> Self {
        Self(PhantomData)
    }

    pub fn a(&self, t: T) -> Result<T> {
        eval_a(t)
    }

    pub fn b(&self, t: T) -> T {
        eval_b(t)
    }

    pub fn phi(&self, t: T) -> Result<T> {
        eval_phi(t)
    }

    pub fn cubic_residual(&self, t: T, a: T) -> T {
        cubic_residual(t, a)
    }

    /// `((2/3)(1-t))^{3/2}`, the lower bound on `a(t)`.
    pub fn lower_bound(&self, t: T) -> T {
        limit_ratio::<T>() * (T::one() - t).powf(T::lit(1.5))
    }

    /// `(1-t)^{3/2}`, the upper bound on `a(t)`.
    pub fn upper_bound(&self, t: T) -> T {
        (T::one() - t).powf(T::lit(1.5))
    }
}
