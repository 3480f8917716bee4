//! Bayesian optimization with a deterministic corrective model injected into
//! the acquisition function.
//!
//! The acquisition maximized at iteration `i` is
//! `α(x) + γ · h(i) · ξ(x)`, where `α` is UCB, EI or POI under a Matérn-5/2
//! GP, `ξ` is a regressor refit on the observations every iteration, `γ`
//! brings `ξ` to the scale of `α`, and `h(i) = min(1, 4i²/i_max²)` phases it
//! in. Once consecutive suggestions stall relative to the spread of the
//! data, `γ` is permanently set to zero and the loop continues as plain BO.

pub mod acquisition;
pub mod benchmark;
pub mod error;
pub mod gp;
pub mod lbfgs;
mod linalg;
pub mod maximize;
pub mod models;
pub mod optimizer;
pub mod space;
pub mod state;

pub use acquisition::{AcquisitionConfig, AcquisitionKind, AugmentState};
pub use error::{Error, Result};
pub use gp::{GpFitOptions, GpModel, KernelParams, MeanMode, Prediction};
pub use models::{FittedRegressor, RegressorKind, RegressorSpec};
pub use optimizer::{
    run_campaign, run_linear_mean_ablation, run_random_search, CampaignConfig, CampaignResult, Optimizer, Suggestion,
    Surrogate, Variant,
};
pub use space::{Dataset, Observation, Rng, SearchSpace};
