//! Numeric configuration: defaults, then the optional `key = value` file,
//! then command-line flags.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use sigbkg::NumericConfig;

use crate::args::NumericFlags;
use crate::Failure;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    theta_max: Option<f64>,
    theta_step: Option<f64>,
    refine_endpoints: Option<bool>,
    endpoint_tol: Option<f64>,
    k_max_eps: Option<f64>,
    risk_eps: Option<f64>,
    series_eps: Option<f64>,
    bisect_tol: Option<f64>,
    opt_tol: Option<f64>,
    max_iter: Option<usize>,
    strict_paper_qpmf: Option<bool>,
}

impl ConfigFile {
    fn apply(self, cfg: &mut NumericConfig) {
        if self.theta_max.is_some() {
            cfg.theta_max = self.theta_max;
        }
        if self.theta_step.is_some() {
            cfg.theta_step = self.theta_step;
        }
        set(&mut cfg.refine_endpoints, self.refine_endpoints);
        set(&mut cfg.endpoint_tol, self.endpoint_tol);
        set(&mut cfg.k_max_eps, self.k_max_eps);
        set(&mut cfg.risk_eps, self.risk_eps);
        set(&mut cfg.series_eps, self.series_eps);
        set(&mut cfg.bisect_tol, self.bisect_tol);
        set(&mut cfg.opt_tol, self.opt_tol);
        set(&mut cfg.max_iter, self.max_iter);
        set(&mut cfg.strict_paper_qpmf, self.strict_paper_qpmf);
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn parse_file(text: &str) -> Result<ConfigFile, String> {
    toml::from_str(text).map_err(|e| e.message().to_string())
}

pub fn resolve(path: Option<&Path>, flags: &NumericFlags) -> Result<NumericConfig, Failure> {
    let mut cfg = NumericConfig::default();
    if let Some(path) = path {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        parse_file(&text)
            .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?
            .apply(&mut cfg);
    }
    if flags.theta_max.is_some() {
        cfg.theta_max = flags.theta_max;
    }
    if flags.theta_step.is_some() {
        cfg.theta_step = flags.theta_step;
    }
    if flags.no_refine {
        cfg.refine_endpoints = false;
    }
    set(&mut cfg.endpoint_tol, flags.endpoint_tol);
    set(&mut cfg.k_max_eps, flags.k_max_eps);
    set(&mut cfg.risk_eps, flags.risk_eps);
    set(&mut cfg.series_eps, flags.series_eps);
    set(&mut cfg.bisect_tol, flags.bisect_tol);
    set(&mut cfg.opt_tol, flags.opt_tol);
    set(&mut cfg.max_iter, flags.max_iter);
    if flags.strict_paper_qpmf {
        cfg.strict_paper_qpmf = true;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}
