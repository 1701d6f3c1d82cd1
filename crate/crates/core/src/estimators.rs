//! Point estimators of `p = P[S = 0 | X = n] = b^n / (b + θ)^n` and of the
//! signal indicator `I{S > 0}`.

use crate::error::{domain, Result};
use crate::poisson::{log_cdf, log_pmf, Count, Rate};

/// Known background mean `b` and signal mean `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    b: f64,
    theta: f64,
}

impl ModelParams {
    pub fn new(b: f64, theta: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(domain(format!("background mean must be positive and finite, got {b}")));
        }
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(domain(format!("signal mean must be non-negative and finite, got {theta}")));
        }
        Ok(ModelParams { b, theta })
    }

    /// Parameters for computations that only involve the background.
    pub fn background(b: f64) -> Result<Self> {
        Self::new(b, 0.0)
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.b, theta)
    }

    pub fn background_rate(&self) -> Rate {
        Rate::from_valid(self.b)
    }

    /// Mean of the observed count, `b + θ`.
    pub fn total_rate(&self) -> Rate {
        Rate::from_valid(self.b + self.theta)
    }
}

/// An estimate of a probability; always within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ProbEstimate(f64);

impl ProbEstimate {
    pub(crate) fn clamped(v: f64) -> Self {
        debug_assert!(!v.is_nan());
        ProbEstimate(v.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<ProbEstimate> for f64 {
    fn from(p: ProbEstimate) -> f64 {
        p.0
    }
}

/// Rate `α` of the exponential prior `e^{-αθ} dθ`; zero is the flat prior.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PriorRate(f64);

impl PriorRate {
    pub const FLAT: PriorRate = PriorRate(0.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha >= 0.0 {
            Ok(PriorRate(alpha))
        } else {
            Err(domain(format!("prior rate must be non-negative and finite, got {alpha}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `ln (b / (b + θ))^n`.
pub(crate) fn log_p_true(b: f64, theta: f64, n: Count) -> f64 {
    if n == 0 || theta == 0.0 {
        return 0.0;
    }
    n as f64 * (b.ln() - (b + theta).ln())
}

/// The estimand `b^n / (b + θ)^n`.
pub fn p_true(params: &ModelParams, n: Count) -> ProbEstimate {
    ProbEstimate::clamped(log_p_true(params.b, params.theta, n).exp())
}

/// Restricted MLE of the signal mean, `max(0, n - b)`.
pub fn mle_theta(params: &ModelParams, n: Count) -> f64 {
    (n as f64 - params.b).max(0.0)
}

/// Plug-in MLE `b^n / max(b, n)^n`.
pub fn p_mle(params: &ModelParams, n: Count) -> ProbEstimate {
    ProbEstimate::clamped(log_p_true(params.b, mle_theta(params, n), n).exp())
}

/// `f_mu(n) / F_mu(n)` in log space.
fn log_last_term_share(mu: f64, n: Count) -> f64 {
    let mu = Rate::from_valid(mu);
    log_pmf(mu, n) - log_cdf(mu, n)
}

/// Conditional estimator `P(B = n | B <= n) = f_b(n) / F_b(n)`.
pub fn p_hat(params: &ModelParams, n: Count) -> ProbEstimate {
    if n == 0 {
        return ProbEstimate(1.0);
    }
    ProbEstimate::clamped(log_last_term_share(params.b, n).exp())
}

/// Bayes estimator under the prior `e^{-αθ}`: `f_{(1+α)b}(n) / F_{(1+α)b}(n)`.
pub fn p_hat_alpha(params: &ModelParams, n: Count, prior: PriorRate) -> ProbEstimate {
    if n == 0 {
        return ProbEstimate(1.0);
    }
    ProbEstimate::clamped(log_last_term_share((1.0 + prior.0) * params.b, n).exp())
}

/// Posterior mean of `I{S > 0}`: `F_{(1+α)b}(n-1) / F_{(1+α)b}(n)`.
pub fn signal_indicator_estimate(params: &ModelParams, n: Count, prior: PriorRate) -> ProbEstimate {
    if n == 0 {
        return ProbEstimate(0.0);
    }
    let mu = Rate::from_valid((1.0 + prior.0) * params.b);
    ProbEstimate::clamped((log_cdf(mu, n - 1) - log_cdf(mu, n)).exp())
}
