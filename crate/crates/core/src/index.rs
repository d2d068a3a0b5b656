//! The Rényi index of a nonnegative weight sequence.
//!
//! For weights `d_1..d_n` with mean `d`, and `α > 0`,
//!
//! ```text
//! R_α = 1 − [ (1/n) Σ (d_i/d)^α ]^(1/(1−α))          α ≠ 1
//! R_1 = 1 − exp( −(1/n) Σ (d_i/d) log(d_i/d) )         α = 1
//! ```
//!
//! with `0 log 0 = 0`. The value always lies in `[0, 1]`; zero means every
//! weight equals the mean.
//!
//! Weights are sorted before any accumulation, so the result does not depend
//! on the order of the input, and all sums are compensated.

use thiserror::Error;

use crate::graph::DegreeSequence;
use crate::summation::CompensatedSum;

/// `|α − 1|` at or below this selects the Theil (α = 1) branch.
pub const THEIL_BRANCH_TOLERANCE: f64 = 1e-9;

/// Above this α the power sum is accumulated in log space.
pub const LOG_SPACE_ALPHA: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("weight sequence is empty")]
    Empty,
    #[error("weight {value} at position {position} is negative")]
    NegativeWeight { position: usize, value: f64 },
    #[error("weight at position {position} is not finite")]
    NonFiniteWeight { position: usize },
    #[error("all weights are zero; the index is undefined")]
    AllZeroWeights,
    #[error("alpha must be positive and finite, got {0}")]
    NonPositiveAlpha(f64),
}

/// Nonnegative finite weights, at least one of them.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    values: Vec<f64>,
}

impl WeightSequence {
    pub fn new(values: Vec<f64>) -> Result<Self, IndexError> {
        if values.is_empty() {
            return Err(IndexError::Empty);
        }
        for (position, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(IndexError::NonFiniteWeight { position });
            }
            if value < 0.0 {
                return Err(IndexError::NegativeWeight { position, value });
            }
        }
        Ok(Self { values })
    }

    pub fn from_degrees(degrees: &DegreeSequence) -> Result<Self, IndexError> {
        Self::new(degrees.as_slice().iter().map(|&d| f64::from(d)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexParams {
    alpha: f64,
}

impl IndexParams {
    pub fn new(alpha: f64) -> Result<Self, IndexError> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(IndexError::NonPositiveAlpha(alpha));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// True when α is close enough to 1 to use the Theil branch.
    pub fn is_theil(&self) -> bool {
        (self.alpha - 1.0).abs() <= THEIL_BRANCH_TOLERANCE
    }
}

/// Weights sorted ascending and normalised by their mean.
struct Ratios {
    sorted: Vec<f64>,
    mean: f64,
    constant: bool,
}

impl Ratios {
    fn prepare(weights: &WeightSequence) -> Result<Self, IndexError> {
        let mut sorted = weights.values.clone();
        sorted.sort_by(f64::total_cmp);
        let mut total = CompensatedSum::new();
        total.extend(sorted.iter().copied());
        let mean = total.value() / sorted.len() as f64;
        if mean <= 0.0 {
            return Err(IndexError::AllZeroWeights);
        }
        let constant = sorted[0] == sorted[sorted.len() - 1];
        Ok(Self { sorted, mean, constant })
    }

    fn n(&self) -> f64 {
        self.sorted.len() as f64
    }

    fn index(&self, params: IndexParams) -> f64 {
        // Every ratio is exactly 1.
        if self.constant {
            return 0.0;
        }
        let alpha = params.alpha;
        if params.is_theil() {
            self.theil()
        } else if alpha > LOG_SPACE_ALPHA {
            self.power_log_space(alpha)
        } else {
            self.power(alpha)
        }
    }

    fn theil(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for &v in &self.sorted {
            if v > 0.0 {
                let r = v / self.mean;
                acc.add(r * r.ln());
            }
        }
        let t = acc.value() / self.n();
        -(-t).exp_m1()
    }

    /// Sums `r^α − r = r·expm1((α−1) ln r)` so that mean(r) = 1 holds
    /// exactly; summing `r^α` directly loses about `ε/|α−1|` near α = 1.
    fn power(&self, alpha: f64) -> f64 {
        let delta = alpha - 1.0;
        let mut acc = CompensatedSum::new();
        for &v in &self.sorted {
            if v > 0.0 {
                let r = v / self.mean;
                acc.add(r * (delta * r.ln()).exp_m1());
            }
        }
        let log_mean_power = (acc.value() / self.n()).ln_1p();
        -(log_mean_power / (1.0 - alpha)).exp_m1()
    }

    fn power_log_space(&self, alpha: f64) -> f64 {
        let log_mean = self.mean.ln();
        // Ascending order puts the largest ratio last.
        let max_log = self.sorted[self.sorted.len() - 1].ln() - log_mean;
        let mut acc = CompensatedSum::new();
        for &v in &self.sorted {
            if v > 0.0 {
                acc.add((alpha * (v.ln() - log_mean - max_log)).exp());
            }
        }
        let log_mean_power = alpha * max_log + acc.value().ln() - self.n().ln();
        -(log_mean_power / (1.0 - alpha)).exp_m1()
    }
}

/// Rényi index of `weights` at `params.alpha()`.
pub fn renyi_index(weights: &WeightSequence, params: IndexParams) -> Result<f64, IndexError> {
    Ok(Ratios::prepare(weights)?.index(params))
}

/// The index at every α in `alphas`, in the given order.
pub fn renyi_profile(weights: &WeightSequence, alphas: &[f64]) -> Result<Vec<(f64, f64)>, IndexError> {
    let params = alphas
        .iter()
        .map(|&a| IndexParams::new(a))
        .collect::<Result<Vec<_>, _>>()?;
    let ratios = Ratios::prepare(weights)?;
    Ok(params.into_iter().map(|p| (p.alpha(), ratios.index(p))).collect())
}

/// Convenience wrapper validating raw inputs.
pub fn renyi_index_of(values: &[f64], alpha: f64) -> Result<f64, IndexError> {
    let params = IndexParams::new(alpha)?;
    renyi_index(&WeightSequence::new(values.to_vec())?, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn r(values: &[f64], alpha: f64) -> f64 {
        renyi_index_of(values, alpha).unwrap()
    }

    #[test]
    fn constant_sequence_is_zero() {
        assert_eq!(r(&[5.0, 5.0, 5.0, 5.0], 2.0), 0.0);
        for a in [0.5, 1.0, 2.0, 10.0, 80.0] {
            assert_eq!(r(&[5.0, 5.0], a), 0.0);
        }
    }

    #[test]
    fn hand_evaluated_values() {
        assert_abs_diff_eq!(r(&[3.0, 1.0, 1.0, 1.0], 2.0), 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(r(&[1.0, 2.0, 1.0], 2.0), 1.0 / 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r(&[1.0, 2.0, 1.0], 1.0), 0.057191, epsilon = 1e-6);
    }

    #[test]
    fn theil_branch_window() {
        assert!(IndexParams::new(1.0 + 0.9e-9).unwrap().is_theil());
        assert!(!IndexParams::new(1.0 + 1e-8).unwrap().is_theil());
        let w = [1.0, 2.0, 1.0];
        let at_one = r(&w, 1.0);
        for a in [1.0 - 1e-6, 1.0 + 1e-6] {
            assert_abs_diff_eq!(r(&w, a), at_one, epsilon = 1e-4);
        }
    }

    #[test]
    fn profile_preserves_order() {
        let w = WeightSequence::new(vec![3.0, 1.0, 1.0, 1.0]).unwrap();
        let p = renyi_profile(&w, &[2.0, 0.5, 1.0]).unwrap();
        assert_eq!(p.iter().map(|x| x.0).collect::<Vec<_>>(), vec![2.0, 0.5, 1.0]);
        assert_abs_diff_eq!(p[0].1, 0.25, epsilon = 1e-14);
    }

    #[test]
    fn errors() {
        assert_eq!(renyi_index_of(&[0.0, 0.0], 2.0), Err(IndexError::AllZeroWeights));
        assert_eq!(renyi_index_of(&[1.0, 2.0], 0.0), Err(IndexError::NonPositiveAlpha(0.0)));
        assert!(matches!(
            renyi_index_of(&[1.0, -2.0], 2.0),
            Err(IndexError::NegativeWeight { position: 1, .. })
        ));
        assert!(matches!(
            renyi_index_of(&[1.0, f64::NAN], 2.0),
            Err(IndexError::NonFiniteWeight { position: 1 })
        ));
        assert_eq!(renyi_index_of(&[], 2.0), Err(IndexError::Empty));
        let w = WeightSequence::new(vec![1.0, 2.0]).unwrap();
        assert!(renyi_profile(&w, &[2.0, -1.0]).is_err());
    }

    #[test]
    fn log_space_matches_direct_power_where_both_are_finite() {
        let w = WeightSequence::new(vec![1.0, 2.0, 3.0, 7.0, 0.0]).unwrap();
        let ratios = Ratios::prepare(&w).unwrap();
        for a in [2.0, 10.0, 40.0, 60.0] {
            let direct = ratios.power(a);
            let logspace = ratios.power_log_space(a);
            assert_abs_diff_eq!(direct, logspace, epsilon = 1e-12);
        }
    }

    #[test]
    fn huge_alpha_does_not_overflow() {
        // (d_i/d)^α overflows f64 here without the log-space path.
        let mut w = vec![1.0; 10_000];
        w[0] = 100.0;
        let v = r(&w, 400.0);
        assert!(v.is_finite() && (0.0..=1.0).contains(&v), "{v}");
    }

    #[test]
    fn zeros_follow_conventions() {
        let with_zeros = r(&[1.0, 2.0, 1.0, 0.0, 0.0], 1.0);
        let without = r(&[1.0, 2.0, 1.0], 1.0);
        assert!(with_zeros > without);
        assert!(r(&[0.0, 4.0], 0.5) > 0.0);
    }

    #[test]
    fn permutation_is_bit_identical() {
        let a = [0.3, 17.0, 2.5, 9.0, 0.0, 1.125];
        let mut b = a;
        b.reverse();
        for alpha in [0.5, 1.0, 2.0, 75.0] {
            assert_eq!(r(&a, alpha).to_bits(), r(&b, alpha).to_bits());
        }
    }
}
