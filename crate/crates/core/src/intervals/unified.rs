//! Likelihood-ratio ordered confidence belt for the signal mean.
//!
//! At each θ the outcomes `k` are ranked by
//! `R(θ | k) = f_{b+θ}(k) / f_{b+θ̂(k)}(k)` with `θ̂(k) = max(0, k - b)`, and
//! admitted greedily until their Poisson mass reaches the confidence level.
//! The interval for an observed `n` is the set of θ whose acceptance region
//! contains `n`.

use super::{greedy_accept, invert_on_grid, theta_grid, ConfidenceLevel, GridInversion, ThetaInterval};
use crate::config::NumericConfig;
use crate::error::Result;
use crate::estimators::ModelParams;
use crate::poisson::{log_pmf, tail_cutoff, Count, Rate};

/// Acceptance region at one θ, members in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct AcceptanceSet {
    pub members: Vec<Count>,
    pub mass: f64,
}

impl AcceptanceSet {
    pub fn contains(&self, k: Count) -> bool {
        self.members.binary_search(&k).is_ok()
    }
}

/// Denominators `ln f_{b+θ̂(k)}(k)`, which do not depend on θ.
#[derive(Debug, Clone)]
struct BestFit {
    b: f64,
    cache: Vec<f64>,
}

impl BestFit {
    fn new(b: f64) -> Self {
        BestFit { b, cache: Vec::new() }
    }

    fn log_best(&mut self, k: Count) -> f64 {
        let k = k as usize;
        while self.cache.len() <= k {
            let j = self.cache.len() as Count;
            let mu = self.b.max(j as f64);
            self.cache.push(log_pmf(Rate::from_valid(mu), j));
        }
        self.cache[k]
    }
}

fn accept_at(b: f64, theta: f64, level: f64, cfg: &NumericConfig, best: &mut BestFit) -> Result<AcceptanceSet> {
    let mu = Rate::from_valid(b + theta);
    let last = tail_cutoff(mu, cfg.k_max_eps);
    let mut entries: Vec<(Count, f64, f64)> = (0..=last)
        .map(|k| {
            let lp = log_pmf(mu, k);
            (k, lp - best.log_best(k), lp.exp())
        })
        .collect();
    let (members, mass) = greedy_accept(&mut entries, level)?;
    Ok(AcceptanceSet { members, mass })
}

/// Acceptance region for the parameters' θ.
pub fn unified_accept(params: &ModelParams, level: ConfidenceLevel, cfg: &NumericConfig) -> Result<AcceptanceSet> {
    cfg.validate()?;
    accept_at(params.b(), params.theta(), level.get(), cfg, &mut BestFit::new(params.b()))
}

/// Confidence belt over a fixed θ grid, reusable for every observed count
/// whose default `theta_max` does not exceed the grid's.
#[derive(Debug, Clone)]
pub struct UnifiedBelt {
    b: f64,
    level: f64,
    cfg: NumericConfig,
    grid: Vec<f64>,
    regions: Vec<AcceptanceSet>,
}

impl UnifiedBelt {
    /// Build the belt on a grid large enough for observed counts up to
    /// `n_max`.
    pub fn build(params: &ModelParams, level: ConfidenceLevel, cfg: &NumericConfig, n_max: Count) -> Result<Self> {
        cfg.validate()?;
        let b = params.b();
        let grid = theta_grid(cfg.theta_step_for(b), cfg.theta_max_for(b, n_max));
        let mut best = BestFit::new(b);
        let regions = grid
            .iter()
            .map(|&t| accept_at(b, t, level.get(), cfg, &mut best))
            .collect::<Result<Vec<_>>>()?;
        Ok(UnifiedBelt { b, level: level.get(), cfg: cfg.clone(), grid, regions })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn region(&self, i: usize) -> &AcceptanceSet {
        &self.regions[i]
    }

    /// Invert the belt at observed count `n`, using the grid points up to
    /// `n`'s own `theta_max`.
    pub fn invert(&self, n: Count) -> Result<GridInversion> {
        let top = self.cfg.theta_max_for(self.b, n);
        let len = self.grid.iter().take_while(|&&t| t <= top).count();
        let grid = &self.grid[..len.min(self.grid.len())];
        let mut best = BestFit::new(self.b);
        invert_on_grid(
            |i, t| {
                if i < self.regions.len() {
                    Ok(self.regions[i].contains(n))
                } else {
                    Ok(accept_at(self.b, t, self.level, &self.cfg, &mut best)?.contains(n))
                }
            },
            grid,
            &self.cfg,
        )
    }
}

/// Confidence interval for θ at observed count `n`.
pub fn unified_interval_theta(
    params: &ModelParams,
    n: Count,
    level: ConfidenceLevel,
    cfg: &NumericConfig,
) -> Result<ThetaInterval> {
    Ok(unified_inversion(params, n, level, cfg)?.interval)
}

/// As [`unified_interval_theta`], with the grid contiguity diagnostic.
pub fn unified_inversion(
    params: &ModelParams,
    n: Count,
    level: ConfidenceLevel,
    cfg: &NumericConfig,
) -> Result<GridInversion> {
    UnifiedBelt::build(params, level, cfg, n)?.invert(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::theta_to_p_interval;

    fn lvl(x: f64) -> ConfidenceLevel {
        ConfidenceLevel::new(x).unwrap()
    }

    #[test]
    fn zero_signal_admits_the_tied_top_counts_first() {
        let p = ModelParams::new(1.0, 0.0).unwrap();
        let a = unified_accept(&p, lvl(0.9), &NumericConfig::default()).unwrap();
        assert!(a.contains(0) && a.contains(1));
        assert!(a.mass >= 0.9);
    }

    #[test]
    fn tiny_level_gives_single_best_count() {
        let p = ModelParams::new(2.0, 3.3).unwrap();
        let a = unified_accept(&p, lvl(1e-9), &NumericConfig::default()).unwrap();
        assert_eq!(a.members.len(), 1);
        // the ratio equals one exactly where θ̂(k) = θ, i.e. k = b + θ is not an
        // integer here so the maximiser is the count nearest the mean
        assert!(a.members[0] == 5 || a.members[0] == 6);
    }

    #[test]
    fn region_is_minimal_under_the_ordering() {
        let p = ModelParams::new(1.0, 3.0).unwrap();
        let cfg = NumericConfig::default();
        let a = unified_accept(&p, lvl(0.9), &cfg).unwrap();
        assert!(a.mass >= 0.9);
        // brute force: rank, accumulate, compare
        let mu = Rate::new(4.0).unwrap();
        let mut rank: Vec<(u64, f64, f64)> = (0..60)
            .map(|k| {
                let lp = log_pmf(mu, k);
                let best = log_pmf(Rate::new(1f64.max(k as f64)).unwrap(), k);
                (k, lp - best, lp.exp())
            })
            .collect();
        rank.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap().then(x.0.cmp(&y.0)));
        let mut mass = 0.0;
        let mut want = Vec::new();
        let mut last_prob = 0.0;
        for (k, _, f) in rank {
            want.push(k);
            mass += f;
            last_prob = f;
            if mass >= 0.9 {
                break;
            }
        }
        want.sort();
        assert_eq!(a.members, want);
        // dropping the last admitted count would fall short of the level
        assert!(a.mass - last_prob < 0.9);
    }

    #[test]
    fn intervals_for_small_counts() {
        let cfg = NumericConfig::default();
        let p1 = ModelParams::background(1.0).unwrap();

        let t0 = unified_interval_theta(&p1, 0, lvl(0.9), &cfg).unwrap();
        assert_eq!(t0.lower, 0.0);
        assert!((t0.upper - 1.61).abs() < 0.01, "{t0:?}");
        assert_eq!(theta_to_p_interval(&p1, 0, &t0), crate::intervals::ProbInterval::DEGENERATE_ONE);

        let t1 = unified_interval_theta(&p1, 1, lvl(0.9), &cfg).unwrap();
        assert_eq!(t1.lower, 0.0);
        assert!((t1.upper - 3.36).abs() < 0.01, "{t1:?}");
    }

    #[test]
    fn belt_reuse_matches_direct_construction() {
        let cfg = NumericConfig::default();
        let p = ModelParams::background(2.0).unwrap();
        let belt = UnifiedBelt::build(&p, lvl(0.9), &cfg, 12).unwrap();
        for n in 0..=6 {
            let a = belt.invert(n).unwrap().interval;
            let b = unified_interval_theta(&p, n, lvl(0.9), &cfg).unwrap();
            assert_eq!(a, b, "n={n}");
        }
    }
}
