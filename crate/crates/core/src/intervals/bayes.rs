//! Highest-posterior-density interval for `p` under the flat prior on θ.
//!
//! With `X = n` the posterior density of `p` is
//! `g(p|n) = b^{n+1} / (n! n F_b(n)) p^{-(2n+1)/n} e^{-b p^{-1/n}}`.
//! Writing `u = b + θ = b p^{-1/n}`, the log density becomes
//! `C + (2n+1) ln u - u` and the posterior CDF is `G(p|n) = F_u(n) / F_b(n)`,
//! so every step below is carried out in `u`, where nothing under- or
//! overflows.

use super::{ConfidenceLevel, ProbInterval};
use crate::config::NumericConfig;
use crate::error::{domain, Error, Result};
use crate::estimators::ModelParams;
use crate::poisson::{cdf, ln_factorial, log_add_exp, log_cdf, Count, Rate};
use crate::roots::bisect;

const U_TOL: f64 = 1e-15;

struct Posterior {
    b: f64,
    n: Count,
    log_const: f64,
    cdf_at_one: f64,
}

impl Posterior {
    fn new(b: f64, n: Count) -> Result<Self> {
        if n == 0 {
            return Err(domain("posterior of p is degenerate at 1 when n = 0"));
        }
        let nf = n as f64;
        let log_norm = log_cdf(Rate::from_valid(b), n);
        Ok(Posterior {
            b,
            n,
            log_const: -nf * b.ln() - ln_factorial(n) - nf.ln() - log_norm,
            cdf_at_one: log_norm.exp(),
        })
    }

    fn u_of_p(&self, p: f64) -> f64 {
        self.b * p.powf(-1.0 / self.n as f64)
    }

    fn p_of_u(&self, u: f64) -> f64 {
        (self.n as f64 * (self.b.ln() - u.ln())).exp().min(1.0)
    }

    /// `ln g` at `u`.
    fn log_density_u(&self, u: f64) -> f64 {
        self.log_const + (2 * self.n + 1) as f64 * u.ln() - u
    }

    /// `G` at `u`.
    fn cdf_u(&self, u: f64) -> f64 {
        (cdf(Rate::from_valid(u), self.n) / self.cdf_at_one).min(1.0)
    }

    /// `u` at the density mode, `2n + 1`, clipped to `p <= 1`.
    fn u_mode(&self) -> f64 {
        ((2 * self.n + 1) as f64).max(self.b)
    }

    /// Smallest doubling of `start` past which `pred` holds.
    fn expand(&self, start: f64, mut pred: impl FnMut(f64) -> bool) -> Result<f64> {
        let mut hi = start.max(1.0) * 2.0;
        for _ in 0..200 {
            if pred(hi) {
                return Ok(hi);
            }
            hi *= 2.0;
        }
        Err(Error::Convergence(format!("could not bracket posterior root above u = {start}")))
    }
}

/// Posterior density of `p` given `X = n`, for `0 < p <= 1` and `n >= 1`.
pub fn posterior_density_p(params: &ModelParams, n: Count, p: f64) -> Result<f64> {
    let post = Posterior::new(params.b(), n)?;
    check_p(p)?;
    let nf = n as f64;
    let b = params.b();
    let log_g = (nf + 1.0) * b.ln() - ln_factorial(n) - nf.ln() - log_cdf(Rate::from_valid(b), n)
        - (2.0 * nf + 1.0) / nf * p.ln()
        - b * p.powf(-1.0 / nf);
    debug_assert!((log_g - post.log_density_u(post.u_of_p(p))).abs() < 1e-6 * log_g.abs().max(1.0));
    Ok(log_g.exp())
}

/// Posterior CDF `G(p|n) = F_{b + θ(p)}(n) / F_b(n)` with `θ(p) = b (p^{-1/n} - 1)`.
pub fn posterior_cdf_p(params: &ModelParams, n: Count, p: f64) -> Result<f64> {
    let post = Posterior::new(params.b(), n)?;
    check_p(p)?;
    Ok(post.cdf_u(post.u_of_p(p)))
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("p must lie in (0, 1], got {p}")))
    }
}

/// Shortest interval `[ℓ, u]` with posterior mass `level`, found as a level
/// set of the density:
///
/// 1. find `z` with `G(z) = α`;
/// 2. if `g(z) <= g(1)` the answer is `[z, 1]`;
/// 3. otherwise bisect on the density level `c` between `g(1)` and `g(z)`,
///    solving `g(p_ℓ) = g(p_u) = c` on either side of the mode, until the
///    enclosed mass is within `bisect_tol` of `level`.
///
/// At `n = 0` the posterior is a point mass at 1 and `[1, 1]` is returned.
pub fn hpd_credible_interval(
    params: &ModelParams,
    n: Count,
    level: ConfidenceLevel,
    cfg: &NumericConfig,
) -> Result<ProbInterval> {
    if n == 0 {
        return Ok(ProbInterval::DEGENERATE_ONE);
    }
    cfg.validate()?;
    let post = Posterior::new(params.b(), n)?;
    let alpha = level.significance();
    let b = params.b();

    // (i) G is decreasing in u
    let u_hi = post.expand(b, |u| post.cdf_u(u) < alpha)?;
    let u_z = bisect(|u| post.cdf_u(u) - alpha, b, u_hi, U_TOL, cfg.max_iter)?;
    let log_gz = post.log_density_u(u_z);
    let log_g1 = post.log_density_u(b);

    // (ii)
    if log_gz <= log_g1 {
        return ProbInterval::new(post.p_of_u(u_z), 1.0);
    }

    // (iii) c1 = g(z) above, c2 = g(1) below
    let u_mode = post.u_mode();
    let mut c_high = log_gz;
    let mut c_low = log_g1;
    let mut last_gap = f64::INFINITY;
    for _ in 0..cfg.max_iter {
        let c0 = log_add_exp(c_high, c_low) - std::f64::consts::LN_2;
        // right of the p-mode: u in [b, u_mode], density increasing in u
        let u_upper_p = bisect(|u| post.log_density_u(u) - c0, b, u_mode, U_TOL, cfg.max_iter)?;
        // left of the p-mode: u beyond u_mode, density decreasing in u
        let far = post.expand(u_mode, |u| post.log_density_u(u) < c0)?;
        let u_lower_p = bisect(|u| post.log_density_u(u) - c0, u_mode, far, U_TOL, cfg.max_iter)?;
        let mass = post.cdf_u(u_upper_p) - post.cdf_u(u_lower_p);
        last_gap = mass - level.get();
        if last_gap.abs() < cfg.bisect_tol {
            return ProbInterval::new(post.p_of_u(u_lower_p), post.p_of_u(u_upper_p));
        }
        if mass > level.get() {
            c_low = c0;
        } else {
            c_high = c0;
        }
        if c_high - c_low <= f64::EPSILON * c_high.abs().max(1.0) {
            break;
        }
    }
    Err(Error::Convergence(format!(
        "HPD search for b = {b}, n = {n} stalled with mass error {last_gap:e}"
    )))
}
