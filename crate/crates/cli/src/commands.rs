use sigbkg::estimators::{mle_theta, p_hat, p_hat_alpha, p_mle, signal_indicator_estimate};
use sigbkg::hypothesis::{classical_type1, least_n0, modified_type1, modified_type1_theta, ErrorRateKind};
use sigbkg::hypothesis::{RejectionThreshold, SignificanceLevel};
use sigbkg::intervals::{coverage_curve, interval_p};
use sigbkg::risk::{conditional_risk_mle, conditional_risk_phat, default_theta_grid, mse_curve, EstimatorId};
use sigbkg::{ConfidenceLevel, IntervalMethod, ModelParams, NumericConfig, PriorRate, Result};

use crate::args::{Estimator, Figure};
use crate::format::{coord, sig, sig3};
use crate::table::Table;

/// Precision of curve data, where three figures would hide e.g. whether a
/// coverage value sits above the nominal level.
const CURVE_DIGITS: usize = 6;

/// The (b, n) pairs of the reference interval table.
pub const TABLE1_ROWS: [(f64, u64); 17] = [
    (1.0, 0),
    (1.0, 1),
    (1.0, 2),
    (2.0, 1),
    (2.0, 2),
    (2.0, 3),
    (2.0, 4),
    (5.0, 4),
    (5.0, 5),
    (5.0, 6),
    (5.0, 7),
    (10.0, 9),
    (10.0, 10),
    (10.0, 11),
    (10.0, 12),
    (10.0, 13),
    (10.0, 14),
];

fn num(x: f64) -> String {
    sig(x, CURVE_DIGITS)
}

pub fn estimate(b: f64, n: u64, alpha: Option<f64>) -> Result<Table> {
    let p = ModelParams::background(b)?;
    let mut t = Table::new(&["quantity", "value"]);
    t.push(vec!["p_hat".into(), sig3(p_hat(&p, n).value())]);
    t.push(vec!["p_mle".into(), sig3(p_mle(&p, n).value())]);
    t.push(vec!["theta_hat".into(), sig3(mle_theta(&p, n))]);
    if let Some(a) = alpha {
        let prior = PriorRate::new(a)?;
        t.push(vec!["p_hat_alpha".into(), sig3(p_hat_alpha(&p, n, prior).value())]);
        t.push(vec!["signal_indicator".into(), sig3(signal_indicator_estimate(&p, n, prior).value())]);
    }
    Ok(t)
}

pub fn interval(methods: &[IntervalMethod], b: f64, ns: &[u64], level: f64, cfg: &NumericConfig) -> Result<Table> {
    let p = ModelParams::background(b)?;
    let level = ConfidenceLevel::new(level)?;
    let mut t = Table::new(&["b", "n", "method", "lower", "upper"]);
    for &n in ns {
        for &m in methods {
            let iv = interval_p(m, &p, n, level, cfg)?;
            t.push(vec![coord(b), n.to_string(), m.name().into(), sig3(iv.lower), sig3(iv.upper)]);
        }
    }
    Ok(t)
}

pub fn coverage(methods: &[IntervalMethod], b: f64, thetas: &[f64], level: f64, cfg: &NumericConfig) -> Result<Table> {
    let level = ConfidenceLevel::new(level)?;
    let mut t = Table::new(&["b", "theta", "method", "coverage"]);
    for &m in methods {
        for (theta, c) in coverage_curve(m, b, thetas, level, cfg)? {
            t.push(vec![coord(b), coord(theta), m.name().into(), num(c)]);
        }
    }
    Ok(t)
}

fn estimator_id(e: Estimator, alpha: Option<f64>) -> Result<(EstimatorId, &'static str)> {
    Ok(match e {
        Estimator::PHat => (EstimatorId::PHat, "p_hat"),
        Estimator::PMle => (EstimatorId::PMle, "p_mle"),
        Estimator::PHatAlpha => {
            let a = alpha.ok_or_else(|| sigbkg::Error::Domain("p-hat-alpha needs --alpha".into()))?;
            (EstimatorId::PHatAlpha(PriorRate::new(a)?), "p_hat_alpha")
        }
    })
}

fn theta_grid_or_default(b: f64, thetas: &[f64]) -> Vec<f64> {
    if thetas.is_empty() {
        default_theta_grid(b)
    } else {
        thetas.to_vec()
    }
}

pub fn mse(estimators: &[Estimator], b: f64, thetas: &[f64], alpha: Option<f64>, cfg: &NumericConfig) -> Result<Table> {
    ModelParams::background(b)?;
    let grid = theta_grid_or_default(b, thetas);
    let mut t = Table::new(&["b", "theta", "estimator", "mse"]);
    for &e in estimators {
        let (id, name) = estimator_id(e, alpha)?;
        for (theta, r) in mse_curve(id, b, &grid, cfg)? {
            t.push(vec![coord(b), coord(theta), name.into(), num(r)]);
        }
    }
    Ok(t)
}

fn default_counts(b: f64) -> Vec<u64> {
    (0..=(4.0 * b + 20.0).floor() as u64).collect()
}

pub fn risk_cond(b: f64, ns: &[u64]) -> Result<Table> {
    let p = ModelParams::background(b)?;
    let ns = if ns.is_empty() { default_counts(b) } else { ns.to_vec() };
    let mut t = Table::new(&["b", "n", "p_hat", "p_mle"]);
    for n in ns {
        t.push(vec![
            coord(b),
            n.to_string(),
            num(conditional_risk_phat(&p, n)),
            num(conditional_risk_mle(&p, n)),
        ]);
    }
    Ok(t)
}

pub fn type1(b: f64, n0s: &[u64], theta: Option<f64>, cfg: &NumericConfig) -> Result<Table> {
    let p = ModelParams::background(b)?;
    let at = theta.map(|th| ModelParams::new(b, th)).transpose()?;
    let mut t = match at {
        Some(_) => Table::new(&["b", "n0", "classical", "modified", "modified_theta"]),
        None => Table::new(&["b", "n0", "classical", "modified"]),
    };
    for &n0 in n0s {
        let r = RejectionThreshold::new(n0)?;
        let mut row = vec![
            coord(b),
            n0.to_string(),
            num(classical_type1(&p, r)),
            num(modified_type1(&p, r, cfg)),
        ];
        if let Some(pt) = &at {
            row.push(num(modified_type1_theta(pt, r, cfg)));
        }
        t.push(row);
    }
    Ok(t)
}

pub fn table1(level: f64, rows: &[(f64, u64)], cfg: &NumericConfig) -> Result<Table> {
    let rows = if rows.is_empty() { &TABLE1_ROWS[..] } else { rows };
    let mut t = Table::new(&["b", "n", "method", "lower", "upper"]);
    let level = ConfidenceLevel::new(level)?;
    for &(b, n) in rows {
        let p = ModelParams::background(b)?;
        for m in IntervalMethod::ALL {
            let iv = interval_p(m, &p, n, level, cfg)?;
            t.push(vec![coord(b), n.to_string(), m.name().into(), sig3(iv.lower), sig3(iv.upper)]);
        }
    }
    Ok(t)
}

pub fn table2(level: f64, bs: &[f64], cfg: &NumericConfig) -> Result<Table> {
    let level = SignificanceLevel::new(level)?;
    let default: Vec<f64> = (1..=10).map(f64::from).collect();
    let bs = if bs.is_empty() { &default[..] } else { bs };
    let mut t = Table::new(&["b", "classical_n0", "modified_n0"]);
    for &b in bs {
        let p = ModelParams::background(b)?;
        let c = least_n0(&p, level, ErrorRateKind::Classical, cfg)?;
        let m = least_n0(&p, level, ErrorRateKind::Modified, cfg)?;
        t.push(vec![coord(b), c.get().to_string(), m.get().to_string()]);
    }
    Ok(t)
}

pub fn fig_data(which: Figure, b: f64, methods: &[IntervalMethod], level: f64, cfg: &NumericConfig) -> Result<Table> {
    ModelParams::background(b)?;
    let mut t = Table::new(&["x", "series", "value"]);
    match which {
        Figure::Mse => {
            let grid = default_theta_grid(b);
            for (id, name) in [(EstimatorId::PHat, "p_hat"), (EstimatorId::PMle, "p_mle")] {
                for (theta, r) in mse_curve(id, b, &grid, cfg)? {
                    t.push(vec![coord(theta), name.into(), num(r)]);
                }
            }
        }
        Figure::Coverage => {
            let grid = default_theta_grid(b);
            let level = ConfidenceLevel::new(level)?;
            for &m in methods {
                for (theta, c) in coverage_curve(m, b, &grid, level, cfg)? {
                    t.push(vec![coord(theta), m.name().into(), num(c)]);
                }
            }
        }
        Figure::CondRisk => {
            let p = ModelParams::background(b)?;
            let ns = default_counts(b);
            for (name, f) in [
                ("p_hat", conditional_risk_phat as fn(&ModelParams, u64) -> f64),
                ("p_mle", conditional_risk_mle),
            ] {
                for &n in &ns {
                    t.push(vec![n.to_string(), name.into(), num(f(&p, n))]);
                }
            }
        }
    }
    Ok(t)
}
