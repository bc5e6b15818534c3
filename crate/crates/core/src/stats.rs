//! Small descriptive statistics and ordinary least squares.

/// Arithmetic mean; `NaN` for an empty sample.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Median; `NaN` for an empty sample.
pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Sample standard deviation (divisor `len - 1`); `None` below two points.
pub fn sample_sd(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}

/// Least squares line `y = intercept + slope x`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; needs at least three points.
    pub slope_se: Option<f64>,
}

/// Fits a line through at least two points with distinct `x`.
pub fn ols(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    assert_eq!(xs.len(), ys.len(), "ols needs paired samples");
    let k = xs.len();
    if k < 2 {
        return None;
    }
    let (mx, my) = (mean(xs), mean(ys));
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let slope_se = (k >= 3).then(|| {
        let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
        (rss / (k - 2) as f64 / sxx).sqrt()
    });
    Some(LinearFit { slope, intercept, slope_se })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptive() {
        let xs = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert_eq!(mean(&xs), 5.0);
        assert_eq!(median(&xs), 4.5);
        assert!((sample_sd(&xs).unwrap() - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert!(sample_sd(&[1.0]).is_none());
    }

    #[test]
    fn exact_line() {
        let f = ols(&[1.0, 2.0, 3.0, 4.0], &[3.0, 5.0, 7.0, 9.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!(f.slope_se.unwrap() < 1e-12);
    }

    #[test]
    fn standard_error_against_hand_computation() {
        // fit through (0,0), (1,2), (2,2): residuals -1/3, 2/3, -1/3
        let f = ols(&[0.0, 1.0, 2.0], &[0.0, 2.0, 2.0]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
        assert!((f.intercept - 1.0 / 3.0).abs() < 1e-12);
        let se = ((6.0 / 9.0) / 1.0 / 2.0f64).sqrt();
        assert!((f.slope_se.unwrap() - se).abs() < 1e-12);
    }

    #[test]
    fn degenerate_fits() {
        assert!(ols(&[1.0], &[1.0]).is_none());
        assert!(ols(&[1.0, 1.0], &[1.0, 2.0]).is_none());
        assert!(ols(&[1.0, 2.0], &[1.0, 2.0]).unwrap().slope_se.is_none());
    }
}
