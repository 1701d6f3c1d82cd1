//! Type I error rates for testing `S = 0` against `S > 0` with the rule
//! "reject when `X >= n0`".

use crate::config::NumericConfig;
use crate::error::{domain, Error, Result};
use crate::estimators::{p_hat, ModelParams};
use crate::poisson::{pmf, sf, tail_cutoff, Count};

/// Reject the null when the observed count is at least `n0`; `n0 >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RejectionThreshold(Count);

impl RejectionThreshold {
    pub fn new(n0: Count) -> Result<Self> {
        if n0 >= 1 {
            Ok(RejectionThreshold(n0))
        } else {
            Err(domain("rejection threshold must be at least 1"))
        }
    }

    pub fn get(self) -> Count {
        self.0
    }
}

/// Significance level of a test, distinct from the prior rate.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SignificanceLevel(f64);

impl SignificanceLevel {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(SignificanceLevel(alpha))
        } else {
            Err(domain(format!("significance level must lie in (0, 1), got {alpha}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorRateKind {
    Classical,
    Modified,
}

/// `α(n0) = P_b[X >= n0] = 1 - F_b(n0 - 1)`.
pub fn classical_type1(params: &ModelParams, t: RejectionThreshold) -> f64 {
    sf(params.background_rate(), t.0 - 1)
}

/// `α*_θ(n0) = Σ_{n>=n0} p̂(n) f_{b+θ}(n) / Σ_{n>=0} p̂(n) f_{b+θ}(n)`.
///
/// Numerator and denominator share one truncation window, extended if needed
/// so that it always reaches `n0`.
pub fn modified_type1_theta(params: &ModelParams, t: RejectionThreshold, cfg: &NumericConfig) -> f64 {
    let mu = params.total_rate();
    let last = tail_cutoff(mu, cfg.series_eps).max(t.0);
    let mut num = 0.0;
    let mut den = 0.0;
    // summed from the top so the small tail terms are not absorbed
    for n in (0..=last).rev() {
        let term = p_hat(params, n).value() * pmf(mu, n);
        if n >= t.0 {
            num += term;
        }
        den += term;
    }
    num / den
}

/// `α*(n0) = α*_0(n0)`.
pub fn modified_type1(params: &ModelParams, t: RejectionThreshold, cfg: &NumericConfig) -> f64 {
    let at_zero = ModelParams::background(params.b()).expect("validated background");
    modified_type1_theta(&at_zero, t, cfg)
}

pub fn type1(kind: ErrorRateKind, params: &ModelParams, t: RejectionThreshold, cfg: &NumericConfig) -> f64 {
    match kind {
        ErrorRateKind::Classical => classical_type1(params, t),
        ErrorRateKind::Modified => modified_type1(params, t, cfg),
    }
}

/// Smallest `n0 >= 1` whose error rate is at most `level`.
pub fn least_n0(
    params: &ModelParams,
    level: SignificanceLevel,
    kind: ErrorRateKind,
    cfg: &NumericConfig,
) -> Result<RejectionThreshold> {
    // both rates fall below any level once n0 passes the background tail
    let limit = tail_cutoff(params.background_rate(), level.0 * 1e-3) + 2;
    for n0 in 1..=limit {
        let t = RejectionThreshold(n0);
        if type1(kind, params, t, cfg) <= level.0 {
            return Ok(t);
        }
    }
    Err(Error::Convergence(format!(
        "no rejection threshold up to {limit} reaches level {}",
        level.0
    )))
}
