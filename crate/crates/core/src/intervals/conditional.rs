//! Confidence belt built from the distribution of `X` conditional on the
//! observed background bound `B <= n`:
//!
//! ```text
//! q(k) = f_{b+θ}(k) / F_b(n)                          k <= n
//! q(k) = Σ_{j=0..n} f_b(j) f_θ(k - j) / F_b(n)        k >  n
//! ```
//!
//! Outcomes are ranked by `q(k) / max_θ' q(k)` and admitted greedily, exactly
//! as in the unconditional belt.

use super::{greedy_accept, invert_on_grid, theta_grid, ConfidenceLevel, GridInversion, ThetaInterval};
use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::estimators::ModelParams;
use crate::poisson::{log_cdf, log_pmf, log_sum_exp, tail_cutoff, Count, Rate};
use crate::roots::maximize;

/// Lower summation limit of the `k > n` branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QpmfVariant {
    /// `j = 0..n`: the exact conditional law, sums to one.
    #[default]
    FromZero,
    /// `j = 1..n`; drops the `B = 0` path for `k > n`, so mass is lost.
    FromOne,
}

impl QpmfVariant {
    fn first_j(self) -> Count {
        match self {
            QpmfVariant::FromZero => 0,
            QpmfVariant::FromOne => 1,
        }
    }

    pub fn from_config(cfg: &NumericConfig) -> Self {
        if cfg.strict_paper_qpmf {
            QpmfVariant::FromOne
        } else {
            QpmfVariant::FromZero
        }
    }
}

/// Precomputed background pieces for one observed count.
#[derive(Debug, Clone)]
struct Conditioning {
    b: f64,
    n: Count,
    variant: QpmfVariant,
    /// `ln f_b(j)` for `j = 0..=n`.
    log_fb: Vec<f64>,
    /// `ln F_b(n)`.
    log_norm: f64,
}

impl Conditioning {
    fn new(b: f64, n: Count, variant: QpmfVariant) -> Self {
        let rb = Rate::from_valid(b);
        Conditioning {
            b,
            n,
            variant,
            log_fb: (0..=n).map(|j| log_pmf(rb, j)).collect(),
            log_norm: log_cdf(rb, n),
        }
    }

    /// `ln q(k)` given `ln f_θ(m)` for `m = 0..`.
    fn log_q_with(&self, theta: f64, k: Count, log_ftheta: &[f64]) -> f64 {
        if k <= self.n {
            return log_pmf(Rate::from_valid(self.b + theta), k) - self.log_norm;
        }
        if theta == 0.0 {
            return f64::NEG_INFINITY;
        }
        let terms = (self.variant.first_j()..=self.n).map(|j| self.log_fb[j as usize] + log_ftheta[(k - j) as usize]);
        log_sum_exp(terms) - self.log_norm
    }

    fn log_q(&self, theta: f64, k: Count) -> f64 {
        if k <= self.n || theta == 0.0 {
            return self.log_q_with(theta, k, &[]);
        }
        let rt = Rate::from_valid(theta);
        let lf: Vec<f64> = (0..=k).map(|m| log_pmf(rt, m)).collect();
        self.log_q_with(theta, k, &lf)
    }

    /// `ln max_θ' q(k)`. For `k <= n` the maximiser is `max(0, k - b)`. For
    /// `k > n` every mixture component `f_θ'(k - j)` peaks at `θ' = k - j`, so
    /// the maximum lies in `[k - n, k]`.
    fn log_q_max(&self, k: Count, cfg: &NumericConfig) -> f64 {
        if k <= self.n {
            let mu = self.b.max(k as f64);
            return log_pmf(Rate::from_valid(mu), k) - self.log_norm;
        }
        let lo = (k - self.n) as f64;
        let hi = k as f64;
        let (_, v) = maximize(|t| self.log_q(t, k), lo, hi, 64, cfg.opt_tol, cfg.max_iter);
        v
    }

    /// Last count worth including at θ: the conditional law is dominated by
    /// `n + S`.
    fn window(&self, theta: f64, eps: f64) -> Count {
        if theta == 0.0 {
            self.n
        } else {
            self.n + tail_cutoff(Rate::from_valid(theta), eps)
        }
    }
}

/// `q^n_{b,θ}(k)` with the normalized (`j = 0`) summation.
pub fn modified_pmf(params: &ModelParams, n_obs: Count, k: Count) -> f64 {
    modified_pmf_with(params, n_obs, k, QpmfVariant::FromZero)
}

pub fn modified_pmf_with(params: &ModelParams, n_obs: Count, k: Count, variant: QpmfVariant) -> f64 {
    Conditioning::new(params.b(), n_obs, variant).log_q(params.theta(), k).exp()
}

/// Belt for one observed count; the maximised denominators are computed once.
#[derive(Debug, Clone)]
pub struct ConditionalBelt {
    cond: Conditioning,
    level: f64,
    cfg: NumericConfig,
    log_q_max: Vec<f64>,
}

impl ConditionalBelt {
    pub fn new(params: &ModelParams, n: Count, level: ConfidenceLevel, cfg: &NumericConfig) -> Result<Self> {
        cfg.validate()?;
        let cond = Conditioning::new(params.b(), n, QpmfVariant::from_config(cfg));
        Ok(ConditionalBelt { cond, level: level.get(), cfg: cfg.clone(), log_q_max: Vec::new() })
    }

    fn ensure_max(&mut self, k: Count) {
        while self.log_q_max.len() as Count <= k {
            let j = self.log_q_max.len() as Count;
            let v = self.cond.log_q_max(j, &self.cfg);
            self.log_q_max.push(v);
        }
    }

    /// Acceptance region at θ.
    pub fn accept(&mut self, theta: f64) -> Result<Vec<Count>> {
        let last = self.cond.window(theta, self.cfg.k_max_eps);
        self.ensure_max(last);
        let log_ftheta: Vec<f64> = if theta > 0.0 {
            let rt = Rate::from_valid(theta);
            (0..=last).map(|m| log_pmf(rt, m)).collect()
        } else {
            Vec::new()
        };
        let mut entries: Vec<(Count, f64, f64)> = (0..=last)
            .map(|k| {
                let lq = self.cond.log_q_with(theta, k, &log_ftheta);
                (k, lq - self.log_q_max[k as usize], lq.exp())
            })
            .collect();
        match greedy_accept(&mut entries, self.level) {
            Ok((members, _)) => Ok(members),
            // the j = 1 law is deficient by e^{-b} P[S > n] / F_b(n), which can
            // exceed 1 - level at large θ
            Err(_) if self.cond.variant == QpmfVariant::FromOne => {
                let total: f64 = entries.iter().map(|e| e.2).sum();
                Err(Error::Domain(format!(
                    "the j = 1 conditional PMF carries only {total:.6} at θ = {theta}, below level {}",
                    self.level
                )))
            }
            Err(e) => Err(e),
        }
    }

    pub fn accepts_observed(&mut self, theta: f64) -> Result<bool> {
        let n = self.cond.n;
        Ok(self.accept(theta)?.binary_search(&n).is_ok())
    }

    pub fn invert(&mut self) -> Result<GridInversion> {
        let b = self.cond.b;
        let grid = theta_grid(self.cfg.theta_step_for(b), self.cfg.theta_max_for(b, self.cond.n));
        let cfg = self.cfg.clone();
        invert_on_grid(|_, t| self.accepts_observed(t), &grid, &cfg)
    }
}

/// Conditional confidence interval for θ at observed count `n`.
pub fn conditional_interval_theta(
    params: &ModelParams,
    n: Count,
    level: ConfidenceLevel,
    cfg: &NumericConfig,
) -> Result<ThetaInterval> {
    Ok(conditional_inversion(params, n, level, cfg)?.interval)
}

pub fn conditional_inversion(
    params: &ModelParams,
    n: Count,
    level: ConfidenceLevel,
    cfg: &NumericConfig,
) -> Result<GridInversion> {
    ConditionalBelt::new(params, n, level, cfg)?.invert()
}
