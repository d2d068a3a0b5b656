//! Theoretical values for both random-graph models.
//!
//! * Finite-n plug-in predictions built from kernel moments:
//!   `1 − (λ_{α,0} / λ_{0,1}^α)^{1/(1−α)}` for α ≠ 1, and `1 − e^{−r_n}` for
//!   α = 1.
//! * Closed-form n → ∞ limits for the exponential-product kernel.
//! * Truncated Pareto moments, the expected power-law degree, and the
//!   `n^{τ/2−1}` rate at which `1 − R₂` vanishes on power-law graphs.
//!
//! Closed forms are evaluated through `log(e^x − 1)` so large `κα` cannot
//! overflow.

use thiserror::Error;

use crate::generators::{HeteroErConfig, PowerLawConfig};
use crate::index::THEIL_BRANCH_TOLERANCE;
use crate::kernels::{Kernel, KernelError, KernelMoments};
use crate::summation::CompensatedSum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("truncated Pareto moment has a pole at k = tau = {0}")]
    KEqualsTau(f64),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

fn invalid(name: &'static str, value: f64, reason: &'static str) -> AsymptoticsError {
    AsymptoticsError::InvalidParameter { name, value, reason }
}

fn check_alpha_not_one(alpha: f64) -> Result<(), AsymptoticsError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(invalid("alpha", alpha, "must be positive"));
    }
    if (alpha - 1.0).abs() <= THEIL_BRANCH_TOLERANCE {
        return Err(invalid("alpha", alpha, "use the alpha = 1 expressions"));
    }
    Ok(())
}

fn check_kappa(kappa: f64) -> Result<(), AsymptoticsError> {
    if !(kappa.is_finite() && kappa >= 0.0) {
        return Err(invalid("kappa", kappa, "must be nonnegative"));
    }
    Ok(())
}

/// `log(e^x − 1)` for `x > 0`.
fn log_expm1(x: f64) -> f64 {
    if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

/// Plug-in prediction `1 − (λ_{α,0} / λ_{0,1}^α)^{1/(1−α)}` from precomputed
/// moments.
///
/// Reported unclamped: at finite n it can dip slightly below zero.
pub fn plugin_from_moments(moments: &KernelMoments, alpha: f64) -> Result<f64, AsymptoticsError> {
    check_alpha_not_one(alpha)?;
    let num = moments.lambda(alpha, 0)?;
    let den = moments.lambda(0.0, 1)?;
    let log_ratio = num.ln() - alpha * den.ln();
    Ok(-(log_ratio / (1.0 - alpha)).exp_m1())
}

pub fn plugin_prediction(kernel: &Kernel, n: usize, alpha: f64) -> Result<f64, AsymptoticsError> {
    plugin_from_moments(&KernelMoments::new(*kernel, n)?, alpha)
}

/// n → ∞ limit of `R_α` under `f(x,y) = e^{−κx}e^{−κy}`, α ≠ 1:
/// `1 − ((e^{κα}−1) κ^{α−1} / (α (e^κ−1)^α))^{1/(1−α)}`.
pub fn limit_exponential(alpha: f64, kappa: f64) -> Result<f64, AsymptoticsError> {
    check_alpha_not_one(alpha)?;
    check_kappa(kappa)?;
    if kappa == 0.0 {
        return Ok(0.0);
    }
    let log_bracket = log_expm1(kappa * alpha) + (alpha - 1.0) * kappa.ln() - alpha.ln() - alpha * log_expm1(kappa);
    Ok(-(log_bracket / (1.0 - alpha)).exp_m1())
}

/// `g(κ) = −1 + κ/(e^κ−1) − log((e^κ−1)/(κe^κ))`, the limit of `r_n` under
/// the exponential-product kernel.
pub fn g_kappa(kappa: f64) -> Result<f64, AsymptoticsError> {
    check_kappa(kappa)?;
    if kappa < 1e-4 {
        // Leading Taylor term; the closed form cancels catastrophically here.
        return Ok(kappa * kappa / 24.0);
    }
    let log_inner = log_expm1(kappa) - kappa.ln() - kappa;
    Ok(-1.0 + kappa / kappa.exp_m1() - log_inner)
}

/// `1 − e^{−g(κ)}`, the α = 1 limit under the exponential-product kernel.
pub fn limit_r1_exponential(kappa: f64) -> Result<f64, AsymptoticsError> {
    Ok(-(-g_kappa(kappa)?).exp_m1())
}

/// `r_n = (1/n) Σ_i (μ_i/(n p λ_{0,1})) log(μ_i/(n p λ_{0,1}))` with
/// `μ_i = p Σ_{j≠i} f_ij`.
pub fn r_n_from_moments(moments: &KernelMoments, p: f64) -> Result<f64, AsymptoticsError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid("p", p, "must lie in (0, 1]"));
    }
    let n = moments.n() as f64;
    let scale = n * p * moments.lambda(0.0, 1)?;
    let mut acc = CompensatedSum::new();
    for &f in moments.row_means() {
        let mu = p * (n * f);
        let ratio = mu / scale;
        acc.add(ratio * ratio.ln());
    }
    Ok(acc.value() / n)
}

pub fn r_n_theoretical(kernel: &Kernel, n: usize, p: f64) -> Result<f64, AsymptoticsError> {
    r_n_from_moments(&KernelMoments::new(*kernel, n)?, p)
}

/// Finite-n α = 1 prediction `1 − e^{−r_n}`.
pub fn plugin_r1(kernel: &Kernel, n: usize, p: f64) -> Result<f64, AsymptoticsError> {
    Ok(-(-r_n_theoretical(kernel, n, p)?).exp_m1())
}

/// `E[min(W, √n)^k] = n^{(k−τ)/2} k/(k−τ) − τ/(k−τ)` for Pareto(τ) `W`.
pub fn truncated_pareto_moment(n: usize, tau: f64, k: f64) -> Result<f64, AsymptoticsError> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(invalid("tau", tau, "must be positive"));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(invalid("k", k, "must be positive"));
    }
    if k == tau {
        return Err(AsymptoticsError::KEqualsTau(tau));
    }
    if n == 0 {
        return Err(invalid("n", 0.0, "must be at least 1"));
    }
    let d = k - tau;
    Ok((n as f64).powf(d / 2.0) * k / d - tau / d)
}

/// Predicted order `n^{τ/2 − 1}` of `1 − R₂` on power-law graphs.
pub fn powerlaw_gap_rate(n: usize, tau: f64) -> Result<f64, AsymptoticsError> {
    if !(tau > 1.0 && tau < 2.0) {
        return Err(invalid("tau", tau, "must lie in (1, 2)"));
    }
    Ok((n as f64).powf(tau / 2.0 - 1.0))
}

/// Untruncated expected degree `p (E W)² = p (τ/(τ−1))²`.
pub fn expected_degree_powerlaw(tau: f64, p: f64) -> Result<f64, AsymptoticsError> {
    if tau.is_nan() || tau <= 1.0 {
        return Err(invalid("tau", tau, "must exceed 1"));
    }
    let mean = 1.0 / (1.0 - 1.0 / tau);
    Ok(p * mean * mean)
}

/// Order of the error term in `n`, holding the other parameters fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateOrder {
    pub description: &'static str,
    pub exponent: f64,
}

/// What the theory says about one (model, α, n) combination.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoreticalSummary {
    pub model: String,
    pub alpha: f64,
    pub n: usize,
    pub limit: Option<f64>,
    pub plugin: Option<f64>,
    pub rate: Option<RateOrder>,
}

/// Limit and plug-in for a heterogeneous Erdős–Rényi cell.
pub fn summarize_hetero_er(
    cfg: &HeteroErConfig,
    alpha: f64,
    moments: &KernelMoments,
) -> Result<TheoreticalSummary, AsymptoticsError> {
    let theil = (alpha - 1.0).abs() <= THEIL_BRANCH_TOLERANCE;
    let limit = match cfg.kernel {
        Kernel::Constant { .. } => Some(0.0),
        Kernel::ExponentialProduct { kappa } if theil => Some(limit_r1_exponential(kappa)?),
        Kernel::ExponentialProduct { kappa } => Some(limit_exponential(alpha, kappa)?),
    };
    let plugin = if theil {
        if cfg.p > 0.0 {
            Some(-(-r_n_from_moments(moments, cfg.p)?).exp_m1())
        } else {
            None
        }
    } else {
        Some(plugin_from_moments(moments, alpha)?)
    };
    let rate = RateOrder {
        description: if theil {
            "1/(n sqrt(p))"
        } else {
            "1/(n p) + 1/(n sqrt(p))"
        },
        exponent: -1.0,
    };
    Ok(TheoreticalSummary {
        model: format!("hetero-er {}", cfg.kernel),
        alpha,
        n: cfg.n,
        limit,
        plugin,
        rate: Some(rate),
    })
}

/// Power-law graphs only have theory at α = 2: the limit is 1.
pub fn summarize_power_law(cfg: &PowerLawConfig, alpha: f64) -> TheoreticalSummary {
    let at_two = alpha == 2.0;
    TheoreticalSummary {
        model: "power-law".to_string(),
        alpha,
        n: cfg.n,
        limit: at_two.then_some(1.0),
        plugin: None,
        rate: at_two.then_some(RateOrder {
            description: "n^(tau/2 - 1)",
            exponent: cfg.tau / 2.0 - 1.0,
        }),
    }
}
