//! Inference for the Poisson signal-plus-background model `X = B + S`, where
//! the background `B ~ Poisson(b)` has known mean and the signal
//! `S ~ Poisson(θ)` does not.
//!
//! The central estimand is `p = P[S = 0 | X = n] = b^n / (b + θ)^n`. The crate
//! provides point estimators of `p` and of `I{S > 0}` ([`estimators`]), their
//! squared-error risks ([`risk`]), three interval constructions with their
//! frequentist coverage ([`intervals`]), and classical and modified Type I
//! error rates for testing `S = 0` ([`hypothesis`]).

pub mod config;
pub mod error;
pub mod estimators;
pub mod hypothesis;
pub mod intervals;
pub mod poisson;
pub mod risk;
mod roots;

pub use config::NumericConfig;
pub use error::{Error, Result};
pub use estimators::{ModelParams, PriorRate, ProbEstimate};
pub use intervals::{ConfidenceLevel, IntervalMethod, ProbInterval, ThetaInterval};
pub use poisson::{Count, Rate};
