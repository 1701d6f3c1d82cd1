//! Checks against independent evaluations that share no code with the crate.

use sigbkg::intervals::{coverage_curve, unified_accept};
use sigbkg::risk::integrated_risk_gap;
use sigbkg::{ConfidenceLevel, IntervalMethod, ModelParams, NumericConfig, PriorRate};

/// pmf and cdf of Poisson(mu) at 0..=last by forward recurrence.
fn table(mu: f64, last: usize) -> (Vec<f64>, Vec<f64>) {
    let mut f = vec![(-mu).exp()];
    for n in 1..=last {
        let prev = f[n - 1];
        f.push(prev * mu / n as f64);
    }
    let mut c = Vec::with_capacity(f.len());
    let mut acc = 0.0;
    for &x in &f {
        acc += x;
        c.push(acc);
    }
    (f, c)
}

/// `E_θ[(p̂ - p)^2] - E_θ[(p̂_α - p)^2]`.
fn mse_difference(b: f64, alpha: f64, theta: f64) -> f64 {
    let mu = b + theta;
    let last = (mu + 20.0 * mu.sqrt() + 60.0) as usize;
    let (fb, cb) = table(b, last);
    let (fa, ca) = table((1.0 + alpha) * b, last);
    let (fx, _) = table(mu, last);
    let mut total = 0.0;
    for n in 0..=last {
        let p = (b / mu).powi(n as i32);
        let hat = fb[n] / cb[n];
        let bayes = fa[n] / ca[n];
        total += fx[n] * ((hat - p).powi(2) - (bayes - p).powi(2));
    }
    total
}

/// `∫_0^T mse_difference(θ) e^{-αθ} dθ` by composite Simpson.
fn integrated_difference(b: f64, alpha: f64, upper: f64, steps: usize) -> f64 {
    let h = upper / steps as f64;
    let g = |t: f64| mse_difference(b, alpha, t) * (-alpha * t).exp();
    let mut s = g(0.0) + g(upper);
    for i in 1..steps {
        s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn integrated_gap_matches_theta_quadrature() {
    let cfg = NumericConfig::default();
    for (b, alpha) in [(1.0, 1.0), (1.0, 0.1), (5.0, 0.1), (5.0, 0.001)] {
        let series = integrated_risk_gap(&ModelParams::background(b).unwrap(), PriorRate::new(alpha).unwrap(), &cfg).unwrap();
        // beyond θ = 100 both estimators and p are negligible for these b
        let quad = integrated_difference(b, alpha, 100.0, 80_000);
        assert!((series - quad).abs() < 1e-9 + 1e-6 * series, "b={b} α={alpha}: {series} vs {quad}");
    }
}

#[test]
fn integrated_gap_small_prior_rate() {
    let g = integrated_risk_gap(
        &ModelParams::background(5.0).unwrap(),
        PriorRate::new(0.001).unwrap(),
        &NumericConfig::default(),
    )
    .unwrap();
    assert!(g < 1e-4, "{g}");
}

/// At a grid value of θ the counts whose intervals contain θ are exactly the
/// acceptance region, so coverage equals the region's Poisson mass. On the
/// p-scale `n = 0` is always covered (`p = 1` and the interval is `[1, 1]`).
#[test]
fn unified_coverage_equals_region_mass_on_grid() {
    let cfg = NumericConfig::default();
    let level = ConfidenceLevel::new(0.9).unwrap();
    for b in [1.0, 3.0] {
        let step = cfg.theta_step_for(b);
        let thetas: Vec<f64> = (0..40).map(|i| (i * 7) as f64 * step).collect();
        let curve = coverage_curve(IntervalMethod::Unified, b, &thetas, level, &cfg).unwrap();
        for (t, c) in curve {
            let region = unified_accept(&ModelParams::new(b, t).unwrap(), level, &cfg).unwrap();
            let zero = if region.contains(0) { 0.0 } else { (-(b + t)).exp() };
            let mass = region.mass + zero;
            assert!((c - mass).abs() < 1e-9, "b={b} θ={t}: {c} vs {mass}");
        }
    }
}

