//! Log-log least squares for empirical convergence rates.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} has non-positive n or error")]
    NonPositive { index: usize },
    #[error("all points share the same n; the slope is undefined")]
    DegenerateFit,
    #[error("n must be strictly increasing (point {index})")]
    NotIncreasing { index: usize },
}

/// Fit of `log(err) = intercept + slope · log(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateEstimate {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn estimate_rate(points: &[(f64, f64)]) -> Result<RateEstimate, RateError> {
    if points.len() < 3 {
        return Err(RateError::TooFewPoints(points.len()));
    }
    if let Some(index) = points
        .iter()
        .position(|&(n, e)| !(n > 0.0 && e > 0.0 && n.is_finite() && e.is_finite()))
    {
        return Err(RateError::NonPositive { index });
    }
    if points.iter().all(|p| p.0 == points[0].0) {
        return Err(RateError::DegenerateFit);
    }
    if let Some(w) = points.windows(2).position(|w| w[1].0 <= w[0].0) {
        return Err(RateError::NotIncreasing { index: w + 1 });
    }

    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let m = xs.len() as f64;
    let x_bar = xs.iter().sum::<f64>() / m;
    let y_bar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_bar).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_bar) * (y - y_bar)).sum();
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;
    let ss_tot: f64 = ys.iter().map(|y| (y - y_bar).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };

    Ok(RateEstimate {
        points: points.to_vec(),
        slope,
        intercept,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = [100.0, 400.0, 1600.0, 6400.0]
            .iter()
            .map(|&n: &f64| (n, 3.0 * n.powf(-0.5)))
            .collect();
        let fit = estimate_rate(&pts).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noisy_power_law() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<(f64, f64)> = [100.0, 200.0, 500.0, 1000.0, 2000.0, 5000.0]
            .iter()
            .map(|&n: &f64| {
                let noise: f64 = rng.random_range(-0.01..0.01);
                (n, 0.7 * n.powf(-0.25) * (1.0 + noise))
            })
            .collect();
        let fit = estimate_rate(&pts).unwrap();
        assert!(fit.slope >= -0.30 && fit.slope <= -0.20, "{}", fit.slope);
    }

    #[test]
    fn errors() {
        assert_eq!(
            estimate_rate(&[(1.0, 1.0), (2.0, 1.0)]),
            Err(RateError::TooFewPoints(2))
        );
        assert_eq!(
            estimate_rate(&[(5.0, 1.0), (5.0, 2.0), (5.0, 3.0)]),
            Err(RateError::DegenerateFit)
        );
        assert_eq!(
            estimate_rate(&[(1.0, 1.0), (3.0, 1.0), (2.0, 1.0)]),
            Err(RateError::NotIncreasing { index: 2 })
        );
        assert_eq!(
            estimate_rate(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]),
            Err(RateError::NonPositive { index: 1 })
        );
    }
}
