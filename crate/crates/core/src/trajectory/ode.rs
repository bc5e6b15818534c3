use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Right-hand side of `a' = -6a / (4 - 4t - a)`.
pub fn a_prime<T: Scalar>(t: T, a: T) -> T {
    -T::lit(6.0) * a / (T::lit(4.0) - T::lit(4.0) * t - a)
}

/// One classical fourth-order Runge-Kutta step of size `h` from `(t, y)`.
pub fn rk4_step<T: Scalar, F: Fn(T, T) -> T>(f: &F, t: T, y: T, h: T) -> T {
    let two = T::lit(2.0);
    let half = h / two;
    let k1 = f(t, y);
    let k2 = f(t + half, y + half * k1);
    let k3 = f(t + half, y + half * k2);
    let k4 = f(t + h, y + h * k3);
    y + h / T::lit(6.0) * (k1 + two * k2 + two * k3 + k4)
}

fn check_target<T: Scalar>(t_end: T, h: T) -> Result<()> {
    if !(h > T::zero()) {
        return Err(Error::BadStepSize(h.as_f64()));
    }
    if !(t_end >= T::zero()) {
        return Err(Error::OutOfDomain(t_end.as_f64()));
    }
    if t_end > T::one() - T::lit(10.0) * h {
        return Err(Error::TooCloseToSingularity { t_end: t_end.as_f64(), h: h.as_f64() });
    }
    Ok(())
}

/// Integrates `a' = -6a/(4 - 4t - a)` from `a(0) = 1` to `t_end` with RK4 of
/// step `h`. Requires `h > 0` and `0 <= t_end <= 1 - 10h`.
pub fn integrate_ode<T: Scalar>(t_end: T, h: T) -> Result<T> {
    Ok(integrate_ode_grid(&[t_end], h)?[0])
}

/// [`integrate_ode`] at every point of an ascending grid, in one sweep.
///
/// The solution is advanced on the lattice `t_k = k h`; a grid point between
/// two lattice points is reached by a shorter final step that does not feed
/// back into the lattice, so every value equals the one [`integrate_ode`]
/// returns for that point alone.
pub fn integrate_ode_grid<T: Scalar>(ts: &[T], h: T) -> Result<Vec<T>> {
    for w in ts.windows(2) {
        if !(w[0] <= w[1]) {
            return Err(Error::Config("integration grid must be ascending".into()));
        }
    }
    for &t in ts {
        check_target(t, h)?;
    }
    let f = a_prime::<T>;
    let mut out = Vec::with_capacity(ts.len());
    let (mut k, mut a) = (0usize, T::one());
    for &target in ts {
        loop {
            let t = T::from_count(k) * h;
            let next = T::from_count(k + 1) * h;
            if next > target {
                let rest = target - t;
                out.push(if rest > T::zero() { rk4_step(&f, t, a, rest) } else { a });
                break;
            }
            a = rk4_step(&f, t, a, h);
            k += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_horizon_is_initial_value() {
        assert_eq!(integrate_ode(0.0f64, 1e-6).unwrap(), 1.0);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(matches!(integrate_ode(0.5f64, 0.0), Err(Error::BadStepSize(_))));
        assert!(matches!(integrate_ode(0.5f64, -1e-3), Err(Error::BadStepSize(_))));
        assert!(matches!(integrate_ode(0.9999f64, 1e-4), Err(Error::TooCloseToSingularity { .. })));
        assert!(integrate_ode(-0.1f64, 1e-3).is_err());
    }

    #[test]
    fn grid_values_match_single_targets() {
        let ts = [0.1, 0.25, 0.2500003, 0.7];
        let grid = integrate_ode_grid(&ts, 1e-4).unwrap();
        for (t, g) in ts.iter().zip(&grid) {
            assert_eq!(*g, integrate_ode(*t, 1e-4).unwrap());
        }
    }

    #[test]
    fn rk4_is_exact_on_linear_growth() {
        let y = rk4_step(&|_t: f64, y: f64| y, 0.0, 1.0, 0.1);
        let series = 1.0 + 0.1 + 0.01 / 2.0 + 0.001 / 6.0 + 0.0001 / 24.0;
        assert!((y - series).abs() < 1e-15);
    }
}
