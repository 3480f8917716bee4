use serde::{Deserialize, Serialize};

/// How the cumulative mean regret averages over steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CmrMode {
    /// Mean of the per-evaluation regrets `f(x_k) − f*`.
    #[default]
    Instantaneous,
    /// Mean of the running simple regrets.
    RunningSimple,
}

/// Per-evaluation regret trajectories of one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretSeries {
    pub simple: Vec<f64>,
    pub cumulative_mean: Vec<f64>,
    pub seed: u64,
}

impl RegretSeries {
    /// Builds both series from instantaneous regrets `r_k ≥ 0`.
    pub fn from_regrets(regrets: &[f64], seed: u64, mode: CmrMode) -> Self {
        let mut simple = Vec::with_capacity(regrets.len());
        let mut cumulative_mean = Vec::with_capacity(regrets.len());
        let mut best = f64::INFINITY;
        let mut sum = 0.0;
        for (t, &r) in regrets.iter().enumerate() {
            best = best.min(r);
            simple.push(best);
            sum += match mode {
                CmrMode::Instantaneous => r,
                CmrMode::RunningSimple => best,
            };
            cumulative_mean.push(sum / (t + 1) as f64);
        }
        Self {
            simple,
            cumulative_mean,
            seed,
        }
    }

    pub fn final_simple(&self) -> f64 {
        *self.simple.last().expect("non-empty series")
    }

    pub fn final_cmr(&self) -> f64 {
        *self.cumulative_mean.last().expect("non-empty series")
    }
}

/// `min_k f(x_k) − f_min` for a minimization series.
pub fn simple_regret(values: &[f64], f_min: f64) -> f64 {
    assert!(!values.is_empty(), "empty series");
    values.iter().copied().fold(f64::INFINITY, f64::min) - f_min
}

/// `(1/t) Σ_k (f(x_k) − f_min)` at the last step of a minimization series.
pub fn cumulative_mean_regret(values: &[f64], f_min: f64) -> f64 {
    assert!(!values.is_empty(), "empty series");
    values.iter().map(|v| v - f_min).sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(simple_regret(&[3.0, 0.5, 1.0], 0.5), 0.0);
        let s = RegretSeries::from_regrets(&[2.0, 2.0, 2.0], 0, CmrMode::Instantaneous);
        assert_eq!(s.cumulative_mean, vec![2.0, 2.0, 2.0]);
        assert_eq!(simple_regret(&[3.0, 1.0, 2.0], 0.0), 1.0);
        assert_eq!(cumulative_mean_regret(&[3.0, 1.0, 2.0], 0.0), 2.0);
        let s = RegretSeries::from_regrets(&[3.0, 1.0, 2.0], 0, CmrMode::Instantaneous);
        assert_eq!((s.final_simple(), s.final_cmr()), (1.0, 2.0));
        let s = RegretSeries::from_regrets(&[3.0, 1.0, 2.0], 0, CmrMode::RunningSimple);
        assert!((s.final_cmr() - 5.0 / 3.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn simple_regret_is_running_minimum(r in prop::collection::vec(0.0f64..100.0, 1..60), extra in 0.0f64..100.0) {
            let s = RegretSeries::from_regrets(&r, 1, CmrMode::Instantaneous);
            prop_assert!(s.simple.windows(2).all(|w| w[1] <= w[0]));
            let mut longer = r.clone();
            longer.push(extra);
            let t = RegretSeries::from_regrets(&longer, 1, CmrMode::Instantaneous);
            prop_assert!(t.final_simple() <= s.final_simple());
        }
    }
}
