//! Interval estimates of `p = b^n / (b + θ)^n`.
//!
//! Three constructions are provided:
//!
//! * [`unified`]: the likelihood-ratio ordered confidence belt for `θ`
//!   (ratio taken against the restricted MLE `max(0, k - b)`), inverted on a
//!   θ grid and mapped to the p-scale;
//! * [`conditional`]: the same belt built from the distribution of `X` given
//!   `B <= n`;
//! * [`bayes`]: the highest-posterior-density interval for `p` under the flat
//!   prior on `θ`.
//!
//! [`coverage`] evaluates the frequentist coverage of any of them.

pub mod bayes;
pub mod conditional;
pub mod coverage;
pub mod unified;

use std::fmt;
use std::str::FromStr;

use crate::config::NumericConfig;
use crate::error::{domain, Error, Result};
use crate::estimators::{log_p_true, ModelParams};
use crate::poisson::Count;
use crate::roots::bisect_boundary;

pub use bayes::{hpd_credible_interval, posterior_cdf_p, posterior_density_p};
pub use conditional::{conditional_interval_theta, modified_pmf, modified_pmf_with, QpmfVariant};
pub use coverage::{coverage_curve, coverage_probability, CoverageEvaluator};
pub use unified::{unified_accept, unified_interval_theta, AcceptanceSet};

/// Confidence (or credibility) level `1 - α`, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ConfidenceLevel(f64);

impl ConfidenceLevel {
    pub fn new(level: f64) -> Result<Self> {
        if level > 0.0 && level < 1.0 {
            Ok(ConfidenceLevel(level))
        } else {
            Err(domain(format!("confidence level must lie in (0, 1), got {level}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `α = 1 - level`.
    pub fn significance(self) -> f64 {
        1.0 - self.0
    }
}

/// Interval for the signal mean θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaInterval {
    pub lower: f64,
    pub upper: f64,
}

impl ThetaInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower >= 0.0 && lower <= upper {
            Ok(ThetaInterval { lower, upper })
        } else {
            Err(domain(format!("invalid θ interval [{lower}, {upper}]")))
        }
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.lower <= theta && theta <= self.upper
    }
}

/// Interval on the probability scale, `0 <= lower <= upper <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbInterval {
    pub lower: f64,
    pub upper: f64,
}

impl ProbInterval {
    pub const DEGENERATE_ONE: ProbInterval = ProbInterval { lower: 1.0, upper: 1.0 };

    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&lower) && lower <= upper && upper <= 1.0 {
            Ok(ProbInterval { lower, upper })
        } else {
            Err(domain(format!("invalid probability interval [{lower}, {upper}]")))
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }

    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalMethod {
    Unified,
    Conditional,
    Bayes,
}

impl IntervalMethod {
    pub const ALL: [IntervalMethod; 3] = [IntervalMethod::Unified, IntervalMethod::Conditional, IntervalMethod::Bayes];

    pub fn name(self) -> &'static str {
        match self {
            IntervalMethod::Unified => "unified",
            IntervalMethod::Conditional => "conditional",
            IntervalMethod::Bayes => "bayes",
        }
    }
}

impl fmt::Display for IntervalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IntervalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unified" => Ok(IntervalMethod::Unified),
            "conditional" => Ok(IntervalMethod::Conditional),
            "bayes" | "bayesian" => Ok(IntervalMethod::Bayes),
            other => Err(domain(format!("unknown interval method '{other}'"))),
        }
    }
}

/// Map a θ interval to the p-scale through the decreasing map
/// `θ -> (b / (b + θ))^n`. At `n = 0` the result is `[1, 1]`.
pub fn theta_to_p_interval(params: &ModelParams, n: Count, ti: &ThetaInterval) -> ProbInterval {
    if n == 0 {
        return ProbInterval::DEGENERATE_ONE;
    }
    let b = params.b();
    let lower = log_p_true(b, ti.upper, n).exp();
    let upper = log_p_true(b, ti.lower, n).exp();
    ProbInterval { lower, upper }
}

/// p-scale interval from any of the three constructions.
pub fn interval_p(
    method: IntervalMethod,
    params: &ModelParams,
    n: Count,
    level: ConfidenceLevel,
    cfg: &NumericConfig,
) -> Result<ProbInterval> {
    match method {
        IntervalMethod::Unified => {
            let ti = unified_interval_theta(params, n, level, cfg)?;
            Ok(theta_to_p_interval(params, n, &ti))
        }
        IntervalMethod::Conditional => {
            let ti = conditional_interval_theta(params, n, level, cfg)?;
            Ok(theta_to_p_interval(params, n, &ti))
        }
        IntervalMethod::Bayes => hpd_credible_interval(params, n, level, cfg),
    }
}

/// Result of inverting an acceptance test over a θ grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridInversion {
    pub interval: ThetaInterval,
    /// Number of rejected runs strictly between the first and last accepted
    /// grid points; zero when the accepted set is contiguous.
    pub gaps: usize,
}

/// Points `i * step` for `i = 0, 1, ...` up to `theta_max`.
pub(crate) fn theta_grid(step: f64, theta_max: f64) -> Vec<f64> {
    let count = (theta_max / step + 1e-9).floor() as usize;
    (0..=count).map(|i| i as f64 * step).collect()
}

/// Collect the grid points accepted by `accepts`, take their hull, and (if
/// enabled) refine each end by bisection against the neighbouring rejected
/// grid point.
pub(crate) fn invert_on_grid<A>(mut accepts: A, grid: &[f64], cfg: &NumericConfig) -> Result<GridInversion>
where
    A: FnMut(usize, f64) -> Result<bool>,
{
    let mut first = None;
    let mut last = None;
    let mut gaps = 0;
    let mut prev_accepted = false;
    for (i, &t) in grid.iter().enumerate() {
        let ok = accepts(i, t)?;
        if ok {
            if first.is_none() {
                first = Some(i);
            } else if !prev_accepted {
                gaps += 1;
            }
            last = Some(i);
        }
        prev_accepted = ok;
    }
    let (first, last) = match (first, last) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Internal("no grid value of θ accepts the observed count".into())),
    };
    if last + 1 == grid.len() {
        return Err(Error::Config(format!(
            "acceptance reaches the top of the θ grid ({}); raise theta_max",
            grid[last]
        )));
    }
    let mut lower = grid[first];
    let mut upper = grid[last];
    if cfg.refine_endpoints {
        upper = bisect_boundary(|t| accepts(usize::MAX, t), upper, grid[last + 1], cfg.endpoint_tol, cfg.max_iter)?;
        if first > 0 {
            lower = bisect_boundary(|t| accepts(usize::MAX, t), lower, grid[first - 1], cfg.endpoint_tol, cfg.max_iter)?;
        }
    }
    if gaps > 0 {
        log::warn!("accepted θ grid set has {gaps} gap(s) between {lower} and {upper}");
    }
    Ok(GridInversion { interval: ThetaInterval { lower, upper }, gaps })
}

/// Greedy construction shared by both belts: admit outcomes in decreasing
/// ratio order (smaller count first on ties) until the admitted mass reaches
/// `level`. `entries` holds `(k, log ratio, probability)`.
pub(crate) fn greedy_accept(entries: &mut [(Count, f64, f64)], level: f64) -> Result<(Vec<Count>, f64)> {
    entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut mass = 0.0;
    let mut members = Vec::new();
    for &(k, _, prob) in entries.iter() {
        members.push(k);
        mass += prob;
        if mass >= level {
            members.sort_unstable();
            return Ok((members, mass));
        }
    }
    Err(Error::Config(format!(
        "level {level} unreachable within the truncation window (mass {mass}); lower k_max_eps"
    )))
}
