/// Numerical controls for truncation, grid inversion and root finding.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericConfig {
    /// Upper end of the θ grid used to invert acceptance regions. `None`
    /// selects `b + n + 10 sqrt(b + n) + 10`.
    pub theta_max: Option<f64>,
    /// Spacing of the θ grid. `None` selects `0.005 (1 + b)`.
    pub theta_step: Option<f64>,
    /// Refine each interval endpoint by bisection between the last accepted
    /// and first rejected grid point.
    pub refine_endpoints: bool,
    /// Width at which endpoint refinement stops.
    pub endpoint_tol: f64,
    /// Tail mass dropped from acceptance-region and coverage sums.
    pub k_max_eps: f64,
    /// Tail mass dropped from mean-squared-error sums.
    pub risk_eps: f64,
    /// Tail mass dropped from Type I error and integrated-risk series.
    pub series_eps: f64,
    /// Stopping tolerance on posterior mass in the HPD search.
    pub bisect_tol: f64,
    /// Tolerance of the 1-D maximisation of the modified PMF.
    pub opt_tol: f64,
    /// Iteration cap for every bisection loop.
    pub max_iter: usize,
    /// Start the `k > n` sum of the modified PMF at `j = 1` instead of `j = 0`.
    pub strict_paper_qpmf: bool,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            theta_max: None,
            theta_step: None,
            refine_endpoints: true,
            endpoint_tol: 1e-7,
            k_max_eps: 1e-12,
            risk_eps: 1e-10,
            series_eps: 1e-12,
            bisect_tol: 1e-10,
            opt_tol: 1e-8,
            max_iter: 500,
            strict_paper_qpmf: false,
        }
    }
}

impl NumericConfig {
    pub fn theta_max_for(&self, b: f64, n: u64) -> f64 {
        self.theta_max.unwrap_or_else(|| {
            let s = b + n as f64;
            s + 10.0 * s.sqrt() + 10.0
        })
    }

    pub fn theta_step_for(&self, b: f64) -> f64 {
        self.theta_step.unwrap_or(0.005 * (1.0 + b))
    }

    pub fn validate(&self) -> crate::Result<()> {
        let positive = [
            ("theta_max", self.theta_max.unwrap_or(1.0)),
            ("theta_step", self.theta_step.unwrap_or(1.0)),
            ("endpoint_tol", self.endpoint_tol),
            ("k_max_eps", self.k_max_eps),
            ("risk_eps", self.risk_eps),
            ("series_eps", self.series_eps),
            ("bisect_tol", self.bisect_tol),
            ("opt_tol", self.opt_tol),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(crate::Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [
            ("k_max_eps", self.k_max_eps),
            ("risk_eps", self.risk_eps),
            ("series_eps", self.series_eps),
        ] {
            if v >= 1.0 {
                return Err(crate::Error::Config(format!("{name} must be below 1, got {v}")));
            }
        }
        if let (Some(max), Some(step)) = (self.theta_max, self.theta_step) {
            if step >= max {
                return Err(crate::Error::Config(format!(
                    "theta_step {step} must be smaller than theta_max {max}"
                )));
            }
        }
        if self.max_iter == 0 {
            return Err(crate::Error::Config("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}
