//! Base acquisitions, the corrective-term augmentation, its weight schedule
//! and the stall test that drops it.
//!
//! Everything here uses the maximization convention: larger is better for
//! both the objective and the acquisition.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::gp::{GpModel, Prediction};
use crate::models::FittedRegressor;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AcquisitionKind {
    #[default]
    Ucb,
    Ei,
    Poi,
}

impl AcquisitionKind {
    pub fn name(self) -> &'static str {
        match self {
            AcquisitionKind::Ucb => "ucb",
            AcquisitionKind::Ei => "ei",
            AcquisitionKind::Poi => "poi",
        }
    }
}

impl std::str::FromStr for AcquisitionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ucb" => Ok(Self::Ucb),
            "ei" => Ok(Self::Ei),
            "poi" | "pi" => Ok(Self::Poi),
            other => Err(Error::InvalidConfig(format!("unknown acquisition `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AcquisitionConfig {
    pub kind: AcquisitionKind,
    /// UCB exploration weight.
    pub kappa: f64,
    /// EI/POI improvement offset.
    pub xi_offset: f64,
    /// Threshold of the stall test.
    pub epsilon: f64,
    /// Iteration budget used by the schedule.
    pub i_max: usize,
    pub schedule_enabled: bool,
}

impl Default for AcquisitionConfig {
    fn default() -> Self {
        Self {
            kind: AcquisitionKind::Ucb,
            kappa: 2.6,
            xi_offset: 0.0,
            epsilon: 0.05,
            i_max: 100,
            schedule_enabled: true,
        }
    }
}

impl AcquisitionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) {
            return Err(Error::InvalidConfig(format!("kappa must be > 0, got {}", self.kappa)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be > 0, got {}",
                self.epsilon
            )));
        }
        if self.i_max < 1 {
            return Err(Error::InvalidConfig("i_max must be at least 1".into()));
        }
        if !self.xi_offset.is_finite() {
            return Err(Error::InvalidConfig("xi_offset must be finite".into()));
        }
        Ok(())
    }

    /// Base acquisition for a posterior prediction.
    pub fn base(&self, pred: Prediction, y_best: f64) -> f64 {
        match self.kind {
            AcquisitionKind::Ucb => ucb(pred.mean, pred.std_dev, self.kappa),
            AcquisitionKind::Ei => ei(pred.mean, pred.std_dev, y_best, self.xi_offset),
            AcquisitionKind::Poi => poi(pred.mean, pred.std_dev, y_best, self.xi_offset),
        }
    }

    pub fn weight(&self, iteration: usize) -> f64 {
        if self.schedule_enabled {
            schedule(iteration, self.i_max)
        } else {
            1.0
        }
    }
}

pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

pub fn normal_pdf(z: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp()
}

/// `mu + kappa * sigma`.
pub fn ucb(mu: f64, sigma: f64, kappa: f64) -> f64 {
    mu + kappa * sigma
}

/// Expected improvement over `y_best + offset`.
pub fn ei(mu: f64, sigma: f64, y_best: f64, offset: f64) -> f64 {
    let imp = mu - y_best - offset;
    if sigma <= 0.0 {
        return imp.max(0.0);
    }
    let z = imp / sigma;
    (imp * normal_cdf(z) + sigma * normal_pdf(z)).max(0.0)
}

/// Probability of improving on `y_best + offset`.
pub fn poi(mu: f64, sigma: f64, y_best: f64, offset: f64) -> f64 {
    let imp = mu - y_best - offset;
    if sigma <= 0.0 {
        return if imp > 0.0 { 1.0 } else { 0.0 };
    }
    normal_cdf(imp / sigma)
}

/// Scale factor for the corrective term: 1 for UCB, otherwise the ratio of
/// the summed acquisition to the summed regressor output over the initial
/// design. A vanishing denominator yields 0 with a warning.
pub fn compute_gamma(kind: AcquisitionKind, acq_at_init: &[f64], xi_at_init: &[f64]) -> f64 {
    if kind == AcquisitionKind::Ucb {
        return 1.0;
    }
    let num: f64 = acq_at_init.iter().sum();
    let den: f64 = xi_at_init.iter().sum();
    if den.abs() < 1e-12 {
        log::warn!("corrective model sums to {den:e} over the initial design; gamma set to 0");
        return 0.0;
    }
    let gamma = num / den;
    if gamma < 0.0 {
        log::info!("negative gamma {gamma:e} (acquisition sum {num:e}, model sum {den:e})");
    }
    gamma
}

/// `min(1, 4 i² / i_max²)`.
pub fn schedule(iteration: usize, i_max: usize) -> f64 {
    let i = iteration as f64;
    let m = i_max.max(1) as f64;
    (4.0 * i * i / (m * m)).min(1.0)
}

/// Corrective-term scale and its one-way drop switch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AugmentState {
    pub gamma: f64,
    pub dropped: bool,
    pub drop_iteration: Option<usize>,
}

impl AugmentState {
    pub fn new(gamma: f64) -> Self {
        Self {
            gamma,
            dropped: false,
            drop_iteration: None,
        }
    }

    /// `gamma`, or 0 once dropped.
    pub fn effective_gamma(&self) -> f64 {
        if self.dropped {
            0.0
        } else {
            self.gamma
        }
    }

    /// Records the drop; later calls keep the first iteration.
    pub fn drop_at(&mut self, iteration: usize) {
        if !self.dropped {
            self.dropped = true;
            self.drop_iteration = Some(iteration);
        }
    }
}

/// `α(x) + γ h(i) ξ(x)`, with `γ = 0` after a drop.
pub fn augmented_acq(
    x: &[f64],
    gp: &GpModel,
    xi: &FittedRegressor,
    state: &AugmentState,
    config: &AcquisitionConfig,
    iteration: usize,
    y_best: f64,
) -> f64 {
    let base = config.base(gp.predict(x), y_best);
    let weight = state.effective_gamma() * config.weight(iteration);
    if weight == 0.0 {
        return base;
    }
    base + weight * xi.predict(x)
}

fn norm(v: impl Iterator<Item = f64>) -> f64 {
    v.map(|d| d * d).sum::<f64>().sqrt()
}

/// `‖x_prev − x_new‖ / ‖x_new − mean‖`. A denominator below 1e-12 means
/// the points have collapsed and is reported as ratio 0.
pub fn stall_ratio(x_prev: &[f64], x_new: &[f64], mean: &[f64]) -> f64 {
    let num = norm(x_prev.iter().zip(x_new).map(|(a, b)| a - b));
    let den = norm(x_new.iter().zip(mean).map(|(a, b)| a - b));
    if den < 1e-12 {
        return 0.0;
    }
    num / den
}

/// Whether the newest suggestion has stalled: the step from the previous
/// suggestion is small relative to the distance from the mean of all earlier
/// points. `earlier` are the points probed before `x_new` (so it includes
/// `x_prev`); coordinates are normalized.
pub fn early_stop_check(x_prev: &[f64], x_new: &[f64], earlier: &[Vec<f64>], epsilon: f64) -> bool {
    assert!(!earlier.is_empty(), "the stall test needs at least one earlier point");
    let d = x_new.len();
    let mut mean = vec![0.0; d];
    for p in earlier {
        for (m, v) in mean.iter_mut().zip(p) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= earlier.len() as f64);
    stall_ratio(x_prev, x_new, &mean) < epsilon
}
