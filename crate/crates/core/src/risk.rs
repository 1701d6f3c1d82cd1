//! Squared-error risks of the estimators: unconditional MSE curves,
//! conditional risks given `B <= n`, and the integrated risk gap between the
//! Bayes estimators and `p̂`.

use crate::config::NumericConfig;
use crate::error::{domain, Result};
use crate::estimators::{p_hat, p_hat_alpha, p_mle, p_true, ModelParams, PriorRate};
use crate::poisson::{log_cdf, log_pmf, pmf, tail_cutoff, Count, Rate};

/// Which estimator of `p` a risk refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimatorId {
    PHat,
    PMle,
    PHatAlpha(PriorRate),
}

impl EstimatorId {
    pub fn estimate(&self, params: &ModelParams, n: Count) -> f64 {
        match *self {
            EstimatorId::PHat => p_hat(params, n).value(),
            EstimatorId::PMle => p_mle(params, n).value(),
            EstimatorId::PHatAlpha(prior) => p_hat_alpha(params, n, prior).value(),
        }
    }
}

/// Mean squared error `E_θ[(p̃ - p)^2]` of an estimator given as a function
/// of the observed count. Terms past the `risk_eps` tail are dropped; since
/// each squared error is at most one, the truncation error is below
/// `risk_eps`.
pub fn mse_of<F>(estimator: F, params: &ModelParams, cfg: &NumericConfig) -> f64
where
    F: Fn(Count) -> f64,
{
    let mu = params.total_rate();
    let last = tail_cutoff(mu, cfg.risk_eps);
    (0..=last)
        .map(|n| {
            let d = estimator(n) - p_true(params, n).value();
            d * d * pmf(mu, n)
        })
        .sum::<f64>()
        .clamp(0.0, 1.0)
}

pub fn mse(est: EstimatorId, params: &ModelParams, cfg: &NumericConfig) -> f64 {
    mse_of(|n| est.estimate(params, n), params, cfg)
}

/// Sweep `mse` over a θ grid; returns `(θ, risk)` pairs in grid order.
pub fn mse_curve(est: EstimatorId, b: f64, thetas: &[f64], cfg: &NumericConfig) -> Result<Vec<(f64, f64)>> {
    thetas
        .iter()
        .map(|&t| {
            let params = ModelParams::new(b, t)?;
            Ok((t, mse(est, &params, cfg)))
        })
        .collect()
}

/// Default θ grid for risk curves: `[0, 4b + 20]` in steps of 0.05.
pub fn default_theta_grid(b: f64) -> Vec<f64> {
    let top = 4.0 * b + 20.0;
    let steps = (top / 0.05).round() as usize;
    (0..=steps).map(|i| i as f64 * 0.05).collect()
}

/// Conditional risk of `1 - p̂` for `I{S > 0}` given `B <= n`:
/// `f_b(n) F_b(n-1) / F_b(n)^2`. Does not depend on θ.
pub fn conditional_risk_phat(params: &ModelParams, n: Count) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let b = params.background_rate();
    (log_pmf(b, n) + log_cdf(b, n - 1) - 2.0 * log_cdf(b, n)).exp()
}

/// Conditional risk of the MLE `1 - p_mle` given `B <= n`: the `p̂` risk plus
/// the squared bias `(p̂ - p_mle)^2`.
pub fn conditional_risk_mle(params: &ModelParams, n: Count) -> f64 {
    let bias = p_hat(params, n).value() - p_mle(params, n).value();
    conditional_risk_phat(params, n) + bias * bias
}

/// `∫ f_{b+θ}(n) e^{-αθ} dθ = e^{αb} F_{(1+α)b}(n) / (1+α)^{n+1}`.
pub fn prior_marginal_weight(b: f64, alpha: f64, n: Count) -> f64 {
    let mu = Rate::from_valid((1.0 + alpha) * b);
    (alpha * b + log_cdf(mu, n) - (n as f64 + 1.0) * alpha.ln_1p()).exp()
}

/// Integrated risk gap `E^α[(p̂_α - p̂)^2]` under the prior `e^{-αθ}`.
///
/// Computed as `Σ_n (p̂_α(n) - p̂(n))^2 w_n` with `w_n` the prior-marginal
/// weight of `X = n`. The series is cut where the tail bound
/// `e^{αb} Σ_{n>N} (p̂_α(n) + p̂(n))` falls below `series_eps`, using
/// `p̂_α(n) <= e^{(1+α)b} f_{(1+α)b}(n)` and `p̂(n) <= e^b f_b(n)`.
pub fn integrated_risk_gap(params: &ModelParams, prior: PriorRate, cfg: &NumericConfig) -> Result<f64> {
    let alpha = prior.get();
    if alpha <= 0.0 {
        return Err(domain("integrated risk gap needs a positive prior rate"));
    }
    let b = params.b();
    let eps = cfg.series_eps;
    let scaled = Rate::from_valid((1.0 + alpha) * b);
    let eps_scaled = (eps.ln() - (1.0 + 2.0 * alpha) * b - 2f64.ln()).exp();
    let eps_base = (eps.ln() - (1.0 + alpha) * b - 2f64.ln()).exp();
    let last = cutoff_allowing_tiny(scaled, eps_scaled).max(cutoff_allowing_tiny(params.background_rate(), eps_base));

    let total = (0..=last)
        .map(|n| {
            let d = p_hat_alpha(params, n, prior).value() - p_hat(params, n).value();
            d * d * prior_marginal_weight(b, alpha, n)
        })
        .sum::<f64>();
    Ok(total.max(0.0))
}

fn cutoff_allowing_tiny(mu: Rate, eps: f64) -> Count {
    tail_cutoff(mu, eps.max(f64::MIN_POSITIVE))
}
