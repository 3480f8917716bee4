//! The optimization loop: initial design, per-iteration model fits,
//! acquisition maximization, the stall check, and the baselines.
//!
//! [`Optimizer`] is an ask/tell engine; [`run_campaign`] drives it against
//! an in-process objective. Values are maximized.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::acquisition::{augmented_acq, compute_gamma, early_stop_check, AcquisitionConfig, AugmentState};
use crate::error::{Error, Result};
use crate::gp::{GpFitOptions, GpModel, KernelParams, MeanMode};
use crate::maximize::{maximize_acq_batched, MaximizeOptions};
use crate::models::{FittedRegressor, RegressorKind, RegressorSpec};
use crate::space::{sample_uniform, Dataset, Observation, Rng, SearchSpace, Stream};

/// Which loop to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// GP acquisition plus the scaled corrective model.
    Dkibo,
    /// Plain GP acquisition.
    Sbo,
    /// Uniform sampling.
    RandomSearch,
    /// Plain GP acquisition with a least-squares prior mean.
    LinearMean,
    /// As `LinearMean` until the stall check fires, zero mean afterwards.
    LinearMeanEs,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Dkibo,
        Variant::Sbo,
        Variant::RandomSearch,
        Variant::LinearMean,
        Variant::LinearMeanEs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Dkibo => "dkibo",
            Variant::Sbo => "sbo",
            Variant::RandomSearch => "random_search",
            Variant::LinearMean => "linear_mean",
            Variant::LinearMeanEs => "linear_mean_es",
        }
    }

    fn initial_mean_mode(self) -> MeanMode {
        match self {
            Variant::LinearMean | Variant::LinearMeanEs => MeanMode::Linear,
            _ => MeanMode::Zero,
        }
    }

    fn augments(self) -> bool {
        self == Variant::Dkibo
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Ok(match key.as_str() {
            "dkibo" => Variant::Dkibo,
            "sbo" => Variant::Sbo,
            "rs" | "random" | "randomsearch" => Variant::RandomSearch,
            "linearmean" => Variant::LinearMean,
            "linearmeanes" => Variant::LinearMeanEs,
            _ => return Err(Error::InvalidConfig(format!("unknown variant `{s}`"))),
        })
    }
}

/// Budget knobs for the inner searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchOptions {
    /// Local searches per GP hyperparameter fit (warm start included).
    pub gp_restarts: usize,
    pub n_candidates: usize,
    pub n_starts: usize,
    pub max_evals: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        let m = MaximizeOptions::default();
        Self {
            gp_restarts: GpFitOptions::default().restarts,
            n_candidates: m.n_candidates,
            n_starts: m.n_starts,
            max_evals: m.max_evals,
        }
    }
}

impl SearchOptions {
    fn maximize(&self) -> MaximizeOptions {
        MaximizeOptions {
            n_candidates: self.n_candidates,
            n_starts: self.n_starts,
            max_evals: self.max_evals,
            ..MaximizeOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub space: SearchSpace,
    pub variant: Variant,
    pub acquisition: AcquisitionConfig,
    pub regressor: RegressorSpec,
    pub n_init: usize,
    pub i_max: usize,
    pub seed: u64,
    #[serde(default)]
    pub search: SearchOptions,
}

impl CampaignConfig {
    /// Defaults: DKIBO with a random forest, UCB κ = 2.6, 5 initial points,
    /// 100 iterations.
    pub fn new(space: SearchSpace, seed: u64) -> Self {
        Self {
            space,
            variant: Variant::Dkibo,
            acquisition: AcquisitionConfig::default(),
            regressor: RegressorSpec::random_forest(),
            n_init: 5,
            i_max: 100,
            seed,
            search: SearchOptions::default(),
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_regressor(mut self, regressor: RegressorSpec) -> Self {
        self.regressor = regressor;
        self
    }

    pub fn with_iterations(mut self, i_max: usize) -> Self {
        self.i_max = i_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_init < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_init must be at least 2, got {}",
                self.n_init
            )));
        }
        if self.acquisition.i_max != self.i_max.max(1) {
            return Err(Error::InvalidConfig(format!(
                "acquisition.i_max ({}) must equal max(1, i_max) ({})",
                self.acquisition.i_max,
                self.i_max.max(1)
            )));
        }
        self.acquisition.validate()?;
        let s = &self.search;
        if s.gp_restarts == 0 || s.n_candidates == 0 || s.n_starts == 0 {
            return Err(Error::InvalidConfig("search budgets must be positive".into()));
        }
        Ok(())
    }

    /// Copies `i_max` into the schedule so the two cannot disagree.
    pub fn normalized(mut self) -> Self {
        self.acquisition.i_max = self.i_max.max(1);
        self
    }
}

/// A proposed point. `iteration` is 0 for the initial design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suggestion {
    pub x: Vec<f64>,
    pub iteration: usize,
    /// Hyperparameters of the GP behind the suggestion, reused as the next
    /// fit's warm start.
    pub gp_params: Option<KernelParams>,
}

/// Ask/tell engine. All state is serializable; see [`crate::state`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimizer {
    config: CampaignConfig,
    initial_design: Vec<Vec<f64>>,
    data: Dataset,
    augment: AugmentState,
    mean_mode: MeanMode,
    /// Iteration at which the mean was switched to zero (ES variant).
    mean_swap_iteration: Option<usize>,
    warm_start: Option<KernelParams>,
    gamma_history: Vec<f64>,
    pending: Option<Suggestion>,
}

impl Optimizer {
    pub fn new(config: CampaignConfig) -> Result<Self> {
        config.validate()?;
        let mut rng = Rng::derive(config.seed, Stream::InitialDesign, 0);
        let initial_design = sample_uniform(&config.space, config.n_init, &mut rng);
        let mean_mode = config.variant.initial_mean_mode();
        Ok(Self {
            config,
            initial_design,
            data: Dataset::new(),
            augment: AugmentState::new(0.0),
            mean_mode,
            mean_swap_iteration: None,
            warm_start: None,
            gamma_history: Vec::new(),
            pending: None,
        })
    }

    pub fn config(&self) -> &CampaignConfig {
        &self.config
    }

    pub fn initial_design(&self) -> &[Vec<f64>] {
        &self.initial_design
    }

    pub fn data(&self) -> &Dataset {
        &self.data
    }

    pub fn augment(&self) -> &AugmentState {
        &self.augment
    }

    pub fn mean_mode(&self) -> MeanMode {
        self.mean_mode
    }

    pub fn warm_start(&self) -> Option<KernelParams> {
        self.warm_start
    }

    pub fn gamma_history(&self) -> &[f64] {
        &self.gamma_history
    }

    pub fn pending(&self) -> Option<&Suggestion> {
        self.pending.as_ref()
    }

    /// Iteration the next suggestion belongs to; 0 while in the initial design.
    pub fn next_iteration(&self) -> usize {
        (self.data.len() + 1).saturating_sub(self.config.n_init)
    }

    /// True once `n_init + i_max` points have been observed.
    pub fn is_finished(&self) -> bool {
        self.data.len() >= self.config.n_init + self.config.i_max
    }

    /// Iteration at which the stall check fired, if it has.
    pub fn drop_iteration(&self) -> Option<usize> {
        self.augment.drop_iteration.or(self.mean_swap_iteration)
    }

    /// Next point to evaluate. Pure: repeated calls return the same point.
    pub fn suggest(&self) -> Result<Suggestion> {
        if let Some(p) = &self.pending {
            return Ok(p.clone());
        }
        self.compute_suggestion()
    }

    /// Like [`suggest`](Self::suggest), and remembers the result so that
    /// the matching [`observe`](Self::observe) can reuse its GP as a warm start.
    pub fn ask(&mut self) -> Result<Suggestion> {
        let s = self.suggest()?;
        self.pending = Some(s.clone());
        Ok(s)
    }

    fn compute_suggestion(&self) -> Result<Suggestion> {
        let n = self.data.len();
        if n < self.config.n_init {
            return Ok(Suggestion {
                x: self.initial_design[n].clone(),
                iteration: 0,
                gp_params: None,
            });
        }
        let iteration = self.next_iteration();
        let cfg = &self.config;
        let seed = cfg.seed;
        let dim = cfg.space.dim();
        if cfg.variant == Variant::RandomSearch {
            let mut rng = Rng::derive(seed, Stream::RandomSearch, iteration as u64);
            let z: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
            return Ok(Suggestion {
                x: cfg.space.denormalize(&z),
                iteration,
                gp_params: None,
            });
        }

        let surrogate = self.fit_surrogate(iteration)?;
        let mut rng = Rng::derive(seed, Stream::Acquisition, iteration as u64);
        let best = maximize_acq_batched(
            |z: &[f64]| surrogate.acquisition(z),
            |zs: &[Vec<f64>]| surrogate.acquisition_batch(zs),
            dim,
            &cfg.search.maximize(),
            &mut rng,
        );
        Ok(Suggestion {
            x: cfg.space.denormalize(&best.x),
            iteration,
            gp_params: Some(*surrogate.gp.params()),
        })
    }

    /// The models the next suggestion would be computed from. Needs at
    /// least two observations.
    pub fn surrogate(&self) -> Result<Surrogate> {
        if self.data.len() < 2 {
            return Err(Error::NotEnoughData {
                needed: 2,
                have: self.data.len(),
            });
        }
        self.fit_surrogate(self.next_iteration().max(1))
    }

    fn fit_surrogate(&self, iteration: usize) -> Result<Surrogate> {
        let cfg = &self.config;
        let inputs = self.data.normalized_inputs(&cfg.space);
        let ys = self.data.ys();
        let xi = self.fit_corrective(&inputs, &ys, iteration as u64);
        let opts = GpFitOptions {
            restarts: cfg.search.gp_restarts,
            warm_start: self.warm_start,
            ..GpFitOptions::default()
        };
        let mut rng = Rng::derive(cfg.seed, Stream::GpRestarts, iteration as u64);
        let gp = GpModel::fit(&inputs, &ys, self.mean_mode, &opts, &mut rng)?;
        Ok(Surrogate {
            gp,
            xi,
            augment: self.augment,
            acquisition: cfg.acquisition,
            iteration,
            y_best: self.data.best_y().expect("non-empty dataset"),
        })
    }

    fn fit_corrective(&self, inputs: &[Vec<f64>], ys: &[f64], index: u64) -> FittedRegressor {
        if !self.config.variant.augments() || self.config.regressor.kind == RegressorKind::None {
            return FittedRegressor::zero();
        }
        let mut rng = Rng::derive(self.config.seed, Stream::Regressor, index);
        self.config.regressor.fit(inputs, ys, &mut rng)
    }

    /// Records an evaluation. `x` need not be the suggested point; one
    /// that agrees with the outstanding suggestion to 11 significant digits
    /// is recorded as exactly that suggestion, so printed-and-parsed points
    /// replay bit for bit. Nothing changes when an error is returned.
    pub fn observe(&mut self, x: Vec<f64>, y: f64) -> Result<()> {
        let x = match &self.pending {
            Some(p) if same_point(&p.x, &x) => p.x.clone(),
            _ => x,
        };
        let space = &self.config.space;
        if x.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: x.len(),
            });
        }
        if !y.is_finite() {
            return Err(Error::NonFiniteObjective { x, y });
        }
        space.check(&x)?;

        let iteration = self.next_iteration();
        let mut next = self.clone();
        next.data.push(space, x, y)?;
        if let Some(p) = next.pending.take() {
            if p.gp_params.is_some() {
                next.warm_start = p.gp_params;
            }
        }
        if iteration == 0 {
            if next.data.len() == next.config.n_init {
                next.augment = AugmentState::new(next.initial_gamma()?);
            }
        } else {
            next.stall_check(iteration);
            next.gamma_history.push(next.augment.effective_gamma());
        }
        *self = next;
        Ok(())
    }

    fn initial_gamma(&self) -> Result<f64> {
        let cfg = &self.config;
        if !cfg.variant.augments() {
            return Ok(0.0);
        }
        let inputs = self.data.normalized_inputs(&cfg.space);
        let ys = self.data.ys();
        if cfg.acquisition.kind == crate::acquisition::AcquisitionKind::Ucb {
            return Ok(compute_gamma(cfg.acquisition.kind, &[], &[]));
        }
        let xi = self.fit_corrective(&inputs, &ys, 0);
        let opts = GpFitOptions {
            restarts: cfg.search.gp_restarts,
            ..GpFitOptions::default()
        };
        let mut rng = Rng::derive(cfg.seed, Stream::GpRestarts, 0);
        let gp = GpModel::fit(&inputs, &ys, self.mean_mode, &opts, &mut rng)?;
        let y_best = self.data.best_y().expect("non-empty dataset");
        let acq: Vec<f64> = inputs
            .iter()
            .map(|z| cfg.acquisition.base(gp.predict(z), y_best))
            .collect();
        let xis: Vec<f64> = inputs.iter().map(|z| xi.predict(z)).collect();
        Ok(compute_gamma(cfg.acquisition.kind, &acq, &xis))
    }

    fn stall_check(&mut self, iteration: usize) {
        let augment_live = self.config.variant.augments() && !self.augment.dropped;
        let swap_live = self.config.variant == Variant::LinearMeanEs && self.mean_mode == MeanMode::Linear;
        if iteration < 2 || !(augment_live || swap_live) {
            return;
        }
        let z = self.data.normalized_inputs(&self.config.space);
        let n = z.len();
        if !early_stop_check(&z[n - 2], &z[n - 1], &z[..n - 1], self.config.acquisition.epsilon) {
            return;
        }
        log::debug!("stall check fired at iteration {iteration}");
        if augment_live {
            self.augment.drop_at(iteration);
        }
        if swap_live {
            self.mean_mode = MeanMode::Zero;
            self.mean_swap_iteration = Some(iteration);
        }
    }

    /// Summary of everything observed so far.
    pub fn result(&self) -> CampaignResult {
        let n_init = self.config.n_init;
        let mut best = f64::NEG_INFINITY;
        let mut best_y = Vec::with_capacity(self.data.len());
        let trajectory = self
            .data
            .observations()
            .iter()
            .enumerate()
            .map(|(k, Observation { x, y })| {
                best = best.max(*y);
                best_y.push(best);
                TrajectoryPoint {
                    x: x.clone(),
                    y: *y,
                    iteration: (k + 1).saturating_sub(n_init),
                    initial: k < n_init,
                }
            })
            .collect();
        CampaignResult {
            variant: self.config.variant,
            seed: self.config.seed,
            trajectory,
            best_y,
            gamma: self.augment.gamma,
            gamma_history: self.gamma_history.clone(),
            drop_iteration: self.drop_iteration(),
            iteration_seconds: Vec::new(),
        }
    }
}

fn same_point(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(u, v)| (u - v).abs() <= 1e-11 * u.abs().max(v.abs()).max(1e-300))
}

/// Fitted GP and corrective model for one iteration. Inputs are in the
/// unit cube.
#[derive(Debug, Clone)]
pub struct Surrogate {
    pub gp: GpModel,
    pub xi: FittedRegressor,
    pub augment: AugmentState,
    pub acquisition: AcquisitionConfig,
    pub iteration: usize,
    pub y_best: f64,
}

impl Surrogate {
    /// The augmented acquisition at `z`.
    pub fn acquisition(&self, z: &[f64]) -> f64 {
        augmented_acq(
            z,
            &self.gp,
            &self.xi,
            &self.augment,
            &self.acquisition,
            self.iteration,
            self.y_best,
        )
    }

    /// [`acquisition`](Self::acquisition) over many points.
    pub fn acquisition_batch(&self, zs: &[Vec<f64>]) -> Vec<f64> {
        let weight = self.augment.effective_gamma() * self.acquisition.weight(self.iteration);
        self.gp
            .predict_batch(zs)
            .into_iter()
            .zip(zs)
            .map(|(p, z)| {
                let base = self.acquisition.base(p, self.y_best);
                if weight == 0.0 {
                    base
                } else {
                    base + weight * self.xi.predict(z)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub x: Vec<f64>,
    pub y: f64,
    /// 0 for the initial design, then 1, 2, ...
    pub iteration: usize,
    pub initial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub variant: Variant,
    pub seed: u64,
    pub trajectory: Vec<TrajectoryPoint>,
    /// Running maximum of `y`, one entry per evaluation.
    pub best_y: Vec<f64>,
    /// Scale of the corrective term computed after the initial design.
    pub gamma: f64,
    /// Effective scale after each iteration's stall check.
    pub gamma_history: Vec<f64>,
    pub drop_iteration: Option<usize>,
    /// Wall-clock seconds per loop iteration, initial design excluded.
    pub iteration_seconds: Vec<f64>,
}

impl CampaignResult {
    pub fn ys(&self) -> Vec<f64> {
        self.trajectory.iter().map(|p| p.y).collect()
    }

    pub fn final_best(&self) -> f64 {
        *self.best_y.last().expect("non-empty trajectory")
    }

    /// Best value seen after `iteration` loop iterations.
    pub fn best_at_iteration(&self, n_init: usize, iteration: usize) -> f64 {
        let k = (n_init + iteration).min(self.best_y.len());
        self.best_y[k - 1]
    }
}

/// Runs a full campaign of the configured variant against `objective`.
pub fn run_campaign<F>(config: &CampaignConfig, mut objective: F) -> Result<CampaignResult>
where
    F: FnMut(&[f64]) -> f64,
{
    let mut opt = Optimizer::new(config.clone())?;
    let mut seconds = Vec::with_capacity(config.i_max);
    while !opt.is_finished() {
        let start = Instant::now();
        let s = opt.ask()?;
        let y = objective(&s.x);
        if !y.is_finite() {
            return Err(Error::NonFiniteObjective { x: s.x, y });
        }
        opt.observe(s.x, y)?;
        if s.iteration > 0 {
            seconds.push(start.elapsed().as_secs_f64());
        }
    }
    let mut result = opt.result();
    result.iteration_seconds = seconds;
    Ok(result)
}

/// `n_init + i_max` uniform evaluations; the first `n_init` are the shared
/// initial design.
pub fn run_random_search<F>(config: &CampaignConfig, objective: F) -> Result<CampaignResult>
where
    F: FnMut(&[f64]) -> f64,
{
    let mut cfg = config.clone();
    cfg.variant = Variant::RandomSearch;
    run_campaign(&cfg, objective)
}

/// Linear-mean GP, linear-mean GP with the stall-triggered swap to zero
/// mean, and DKIBO with a linear corrective model, on one seed.
pub fn run_linear_mean_ablation<F>(config: &CampaignConfig, objective: F) -> Result<[CampaignResult; 3]>
where
    F: Fn(&[f64]) -> f64,
{
    let with = |variant, regressor: RegressorSpec| CampaignConfig {
        variant,
        regressor,
        ..config.clone()
    };
    Ok([
        run_campaign(&with(Variant::LinearMean, RegressorSpec::none()), &objective)?,
        run_campaign(&with(Variant::LinearMeanEs, RegressorSpec::none()), &objective)?,
        run_campaign(&with(Variant::Dkibo, RegressorSpec::linear()), &objective)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acquisition::AcquisitionKind;

    fn quick(space: SearchSpace, seed: u64, i_max: usize) -> CampaignConfig {
        let mut c = CampaignConfig::new(space, seed).with_iterations(i_max).normalized();
        c.search = SearchOptions {
            gp_restarts: 2,
            n_candidates: 500,
            n_starts: 2,
            max_evals: 60,
        };
        c
    }

    fn bowl(x: &[f64]) -> f64 {
        -x.iter().map(|v| (v - 0.3) * (v - 0.3)).sum::<f64>()
    }

    #[test]
    fn zero_iterations_is_the_initial_design() {
        let cfg = quick(SearchSpace::unit(2).unwrap(), 1, 0);
        let r = run_campaign(&cfg, bowl).unwrap();
        assert_eq!(r.trajectory.len(), 5);
        assert!(r.trajectory.iter().all(|p| p.initial && p.iteration == 0));
        assert!(r.gamma_history.is_empty());
    }

    #[test]
    fn trajectory_shape_and_best_monotone() {
        let cfg = quick(SearchSpace::unit(2).unwrap(), 3, 8);
        let r = run_campaign(&cfg, bowl).unwrap();
        assert_eq!(r.trajectory.len(), 13);
        assert_eq!(r.gamma_history.len(), 8);
        assert_eq!(r.iteration_seconds.len(), 8);
        assert!(r.best_y.windows(2).all(|w| w[1] >= w[0]));
        let iters: Vec<usize> = r.trajectory.iter().map(|p| p.iteration).collect();
        assert_eq!(&iters[4..], &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn seed_determinism() {
        let cfg = quick(SearchSpace::unit(2).unwrap(), 9, 5);
        let mut a = run_campaign(&cfg, bowl).unwrap();
        let mut b = run_campaign(&cfg, bowl).unwrap();
        a.iteration_seconds.clear();
        b.iteration_seconds.clear();
        assert_eq!(a, b);
    }

    #[test]
    fn variants_share_the_initial_design() {
        let space = SearchSpace::unit(3).unwrap();
        let base = quick(space, 4, 2);
        let runs: Vec<CampaignResult> = Variant::ALL
            .iter()
            .map(|&v| run_campaign(&base.clone().with_variant(v), bowl).unwrap())
            .collect();
        for r in &runs[1..] {
            assert_eq!(r.trajectory[..5], runs[0].trajectory[..5]);
        }
    }

    #[test]
    fn rejects_bad_observations_without_change() {
        let mut opt = Optimizer::new(quick(SearchSpace::unit(2).unwrap(), 0, 3)).unwrap();
        let before = opt.clone();
        assert!(matches!(
            opt.observe(vec![0.5], 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            opt.observe(vec![0.5, 2.0], 1.0),
            Err(Error::OutOfBounds { .. })
        ));
        assert!(matches!(
            opt.observe(vec![0.5, 0.5], f64::NAN),
            Err(Error::NonFiniteObjective { .. })
        ));
        assert_eq!(opt, before);
    }

    #[test]
    fn non_finite_objective_aborts() {
        let cfg = quick(SearchSpace::unit(2).unwrap(), 0, 3);
        let err = run_campaign(&cfg, |x: &[f64]| if x[0] > 2.0 { 0.0 } else { f64::INFINITY }).unwrap_err();
        assert!(matches!(err, Error::NonFiniteObjective { .. }));
    }

    #[test]
    fn config_validation() {
        let space = SearchSpace::unit(2).unwrap();
        let mut c = quick(space, 0, 3);
        c.n_init = 1;
        assert!(Optimizer::new(c.clone()).is_err());
        c.n_init = 5;
        c.acquisition.i_max = 7;
        assert!(Optimizer::new(c).is_err());
    }

    #[test]
    fn suggest_is_pure() {
        let mut opt = Optimizer::new(quick(SearchSpace::unit(2).unwrap(), 2, 3)).unwrap();
        for _ in 0..5 {
            let s = opt.ask().unwrap();
            opt.observe(s.x.clone(), bowl(&s.x)).unwrap();
        }
        let a = opt.suggest().unwrap();
        let b = opt.suggest().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iteration, 1);
        assert_eq!(opt.ask().unwrap(), a);
    }

    #[test]
    fn ucb_gamma_is_one_and_sbo_zero() {
        let space = SearchSpace::unit(2).unwrap();
        let r = run_campaign(&quick(space.clone(), 1, 2), bowl).unwrap();
        assert_eq!(r.gamma, 1.0);
        let r = run_campaign(&quick(space, 1, 2).with_variant(Variant::Sbo), bowl).unwrap();
        assert_eq!(r.gamma, 0.0);
        assert!(r.gamma_history.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn ei_gamma_is_finite() {
        let mut cfg = quick(SearchSpace::unit(2).unwrap(), 5, 2);
        cfg.acquisition.kind = AcquisitionKind::Ei;
        let r = run_campaign(&cfg, bowl).unwrap();
        assert!(r.gamma.is_finite());
    }

    #[test]
    fn rounded_suggestion_snaps_to_the_exact_point() {
        let mut opt = Optimizer::new(quick(SearchSpace::unit(2).unwrap(), 2, 3)).unwrap();
        let s = opt.ask().unwrap();
        let printed: Vec<f64> = s.x.iter().map(|v| format!("{v:.11e}").parse().unwrap()).collect();
        opt.observe(printed, 1.0).unwrap();
        assert_eq!(opt.data().observations()[0].x, s.x);
        let s = opt.ask().unwrap();
        opt.observe(vec![0.5, 0.5], 1.0).unwrap();
        assert_ne!(opt.data().observations()[1].x, s.x);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert_eq!("RS".parse::<Variant>().unwrap(), Variant::RandomSearch);
    }
}
