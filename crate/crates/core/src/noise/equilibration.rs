use serde::{Deserialize, Serialize};

use super::model::NoiseModel;
use crate::error::{Error, Result};

/// Slack allowed on the Boltzmann gap bounds.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibrationReport {
    /// `−1/ln λ^(r−1)` for the pure ultrametric walk; `+∞` when degenerate.
    pub tau_pure: f64,
    /// `g(r−1)^{1/r}`, the gap of the rotating dynamics.
    pub gap_shifted: f64,
    /// `(e^{−π²/(6rβ)}, (1−e^{−β})^{1/r})` for Boltzmann models.
    pub bounds: Option<(f64, f64)>,
    pub bounds_hold: Option<bool>,
    /// Set when `λ^(r−1) = 1`, i.e. the walk never equilibrates.
    pub degenerate: bool,
}

impl EquilibrationReport {
    /// `tau_pure`, or [`Error::DegenerateGap`] when it is infinite.
    pub fn tau_strict(&self) -> Result<f64> {
        if self.degenerate {
            Err(Error::DegenerateGap)
        } else {
            Ok(self.tau_pure)
        }
    }
}

pub fn equilibration_report(model: &NoiseModel) -> Result<EquilibrationReport> {
    let r = model.r();
    let rf = r as f64;
    // 1 − λ^(r−1) = a_r exactly, and ln_1p keeps τ finite far beyond where
    // λ^(r−1) rounds to 1
    let a_r = model.weights()[r];
    let degenerate = a_r <= 0.0;
    let tau_pure = if degenerate {
        f64::INFINITY
    } else {
        -1.0 / (-a_r).ln_1p()
    };

    let log_g: f64 = model.lambdas()[..r].iter().map(|l| l.ln()).sum();
    let gap_shifted = (log_g / rf).exp();

    let bounds = model.beta().map(|beta| {
        let lo = (-std::f64::consts::PI.powi(2) / (6.0 * rf * beta)).exp();
        let hi = (-(-beta).exp()).ln_1p() / rf;
        (lo, hi.exp())
    });
    let bounds_hold = bounds.map(|(lo, hi)| lo - BOUND_SLACK <= gap_shifted && gap_shifted <= hi + BOUND_SLACK);

    Ok(EquilibrationReport {
        tau_pure,
        gap_shifted,
        bounds,
        bounds_hold,
        degenerate,
    })
}
