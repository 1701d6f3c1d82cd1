//! Frequentist coverage `Σ_n f_{b+θ}(n) 1{ℓ(n) <= p_θ(n) <= u(n)}`.

use super::conditional::conditional_inversion;
use super::unified::UnifiedBelt;
use super::{hpd_credible_interval, ConfidenceLevel, IntervalMethod, ProbInterval, ThetaInterval};
use crate::config::NumericConfig;
use crate::error::Result;
use crate::estimators::{log_p_true, ModelParams};
use crate::poisson::{pmf, tail_cutoff, Count};

#[derive(Debug, Clone, Copy, PartialEq)]
enum CachedInterval {
    /// Frequentist constructions are kept on the θ scale; for `n >= 1`,
    /// `θ ∈ [θ_lo, θ_hi]` is equivalent to `p_θ(n) ∈ [ℓ(n), u(n)]` because the
    /// map is strictly decreasing, and comparing θ avoids rounding in the map.
    Theta(ThetaInterval),
    P(ProbInterval),
}

/// Intervals for `n = 0..=n_max`, computed once and then read-only.
#[derive(Debug, Clone)]
pub struct CoverageEvaluator {
    method: IntervalMethod,
    params: ModelParams,
    intervals: Vec<CachedInterval>,
}

impl CoverageEvaluator {
    pub fn new(
        method: IntervalMethod,
        params: &ModelParams,
        level: ConfidenceLevel,
        cfg: &NumericConfig,
        n_max: Count,
    ) -> Result<Self> {
        let intervals = match method {
            IntervalMethod::Unified => {
                let belt = UnifiedBelt::build(params, level, cfg, n_max)?;
                (0..=n_max)
                    .map(|n| Ok(CachedInterval::Theta(belt.invert(n)?.interval)))
                    .collect::<Result<Vec<_>>>()?
            }
            IntervalMethod::Conditional => (0..=n_max)
                .map(|n| Ok(CachedInterval::Theta(conditional_inversion(params, n, level, cfg)?.interval)))
                .collect::<Result<Vec<_>>>()?,
            IntervalMethod::Bayes => (0..=n_max)
                .map(|n| Ok(CachedInterval::P(hpd_credible_interval(params, n, level, cfg)?)))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(CoverageEvaluator { method, params: *params, intervals })
    }

    pub fn method(&self) -> IntervalMethod {
        self.method
    }

    pub fn n_max(&self) -> Count {
        self.intervals.len() as Count - 1
    }

    /// p-scale interval for observed count `n`, if cached.
    pub fn interval(&self, n: Count) -> Option<ProbInterval> {
        self.intervals.get(n as usize).map(|c| match *c {
            CachedInterval::Theta(ti) => super::theta_to_p_interval(&self.params, n, &ti),
            CachedInterval::P(pi) => pi,
        })
    }

    fn covers(&self, n: Count, theta: f64) -> bool {
        if n == 0 {
            return true;
        }
        match self.intervals[n as usize] {
            CachedInterval::Theta(ti) => ti.contains(theta),
            CachedInterval::P(pi) => pi.contains(log_p_true(self.params.b(), theta, n).exp()),
        }
    }

    /// Coverage at θ; counts beyond the cache (mass below `eps` when the
    /// cache was sized by [`coverage_probability`]) contribute nothing.
    pub fn coverage(&self, theta: f64, eps: f64) -> Result<f64> {
        let params = self.params.with_theta(theta)?;
        let mu = params.total_rate();
        let last = tail_cutoff(mu, eps).min(self.n_max());
        let total = (0..=last).filter(|&n| self.covers(n, theta)).map(|n| pmf(mu, n)).sum::<f64>();
        Ok(total.clamp(0.0, 1.0))
    }
}

/// Coverage of `method` at the parameters' θ.
pub fn coverage_probability(
    method: IntervalMethod,
    params: &ModelParams,
    level: ConfidenceLevel,
    cfg: &NumericConfig,
) -> Result<f64> {
    let n_max = tail_cutoff(params.total_rate(), cfg.k_max_eps);
    CoverageEvaluator::new(method, params, level, cfg, n_max)?.coverage(params.theta(), cfg.k_max_eps)
}

/// Coverage over a θ grid, sharing one interval cache; `(θ, coverage)` pairs
/// in grid order.
pub fn coverage_curve(
    method: IntervalMethod,
    b: f64,
    thetas: &[f64],
    level: ConfidenceLevel,
    cfg: &NumericConfig,
) -> Result<Vec<(f64, f64)>> {
    let params = ModelParams::background(b)?;
    let top = thetas.iter().copied().fold(0.0, f64::max);
    let n_max = tail_cutoff(params.with_theta(top)?.total_rate(), cfg.k_max_eps);
    let eval = CoverageEvaluator::new(method, &params, level, cfg, n_max)?;
    thetas.iter().map(|&t| Ok((t, eval.coverage(t, cfg.k_max_eps)?))).collect()
}
