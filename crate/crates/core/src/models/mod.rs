//! Deterministic regressors used as the corrective term of the acquisition.
//!
//! All of them share one contract: fit on `(X, y)` with `X` in the unit
//! cube, then [`FittedRegressor::predict`] is a pure function.

mod boosting;
mod forest;
mod linear;
mod tree;

pub use boosting::fit_gbm;
pub use forest::fit_forest;
pub use linear::{fit_linear, LinearFit};
pub use tree::{fit_tree, Tree, TreeNode, TreeParams};

use serde::{Deserialize, Serialize};

use crate::space::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegressorKind {
    RandomForest,
    GradientBoosting,
    Linear,
    None,
}

/// Model choice and hyperparameters. When deserializing, fields left out
/// take the defaults of the named `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct RegressorSpec {
    pub kind: RegressorKind,
    pub n_estimators: usize,
    pub max_depth: usize,
    /// Shrinkage per boosting stage.
    pub learning_rate: f64,
    /// Forest only: fit each tree on a size-n resample drawn with replacement.
    pub bootstrap: bool,
    pub min_samples_leaf: usize,
    /// Features considered per split; `None` means all of them.
    pub max_features: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: RegressorKind,
    n_estimators: Option<usize>,
    max_depth: Option<usize>,
    learning_rate: Option<f64>,
    bootstrap: Option<bool>,
    min_samples_leaf: Option<usize>,
    #[serde(default)]
    max_features: Option<Option<usize>>,
}

impl TryFrom<RawSpec> for RegressorSpec {
    type Error = String;

    fn try_from(r: RawSpec) -> Result<Self, String> {
        let d = RegressorSpec::of_kind(r.kind);
        let spec = Self {
            kind: r.kind,
            n_estimators: r.n_estimators.unwrap_or(d.n_estimators),
            max_depth: r.max_depth.unwrap_or(d.max_depth),
            learning_rate: r.learning_rate.unwrap_or(d.learning_rate),
            bootstrap: r.bootstrap.unwrap_or(d.bootstrap),
            min_samples_leaf: r.min_samples_leaf.unwrap_or(d.min_samples_leaf),
            max_features: r.max_features.unwrap_or(d.max_features),
        };
        if !spec.learning_rate.is_finite() || spec.learning_rate < 0.0 {
            return Err(format!(
                "learning_rate must be finite and non-negative, got {}",
                spec.learning_rate
            ));
        }
        if spec.max_features == Some(0) {
            return Err("max_features must be positive".into());
        }
        Ok(spec)
    }
}

impl Default for RegressorSpec {
    fn default() -> Self {
        Self::random_forest()
    }
}

impl RegressorSpec {
    /// 20 trees of depth 5 on bootstrap resamples.
    pub fn random_forest() -> Self {
        Self {
            kind: RegressorKind::RandomForest,
            n_estimators: 20,
            max_depth: 5,
            learning_rate: 0.1,
            bootstrap: true,
            min_samples_leaf: 1,
            max_features: None,
        }
    }

    /// 20 stages of depth-3 trees with shrinkage 0.1.
    pub fn gradient_boosting() -> Self {
        Self {
            kind: RegressorKind::GradientBoosting,
            max_depth: 3,
            ..Self::random_forest()
        }
    }

    pub fn linear() -> Self {
        Self {
            kind: RegressorKind::Linear,
            ..Self::random_forest()
        }
    }

    /// The zero model: the augmented acquisition reduces to the base one.
    pub fn none() -> Self {
        Self {
            kind: RegressorKind::None,
            ..Self::random_forest()
        }
    }

    /// Default hyperparameters for `kind`.
    pub fn of_kind(kind: RegressorKind) -> Self {
        match kind {
            RegressorKind::RandomForest => Self::random_forest(),
            RegressorKind::GradientBoosting => Self::gradient_boosting(),
            RegressorKind::Linear => Self::linear(),
            RegressorKind::None => Self::none(),
        }
    }

    fn tree_params(&self) -> TreeParams {
        TreeParams {
            max_depth: self.max_depth,
            min_samples_leaf: self.min_samples_leaf.max(1),
            max_features: self.max_features,
        }
    }

    /// Fits the configured model. `rng` is consumed only by the forest.
    pub fn fit(&self, x: &[Vec<f64>], y: &[f64], rng: &mut Rng) -> FittedRegressor {
        match self.kind {
            RegressorKind::RandomForest => fit_forest(x, y, self, rng),
            RegressorKind::GradientBoosting => fit_gbm(x, y, self),
            RegressorKind::Linear => FittedRegressor::from_linear(self.clone(), fit_linear(x, y), y),
            RegressorKind::None => FittedRegressor::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Fitted {
    Zero,
    Forest(Vec<Tree>),
    Boosting {
        base: f64,
        learning_rate: f64,
        trees: Vec<Tree>,
    },
    Linear(LinearFit),
}

/// A fitted corrective model. Immutable; `predict` has no hidden state.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedRegressor {
    spec: RegressorSpec,
    model: Fitted,
    y_range: (f64, f64),
    seed: Option<u64>,
}

impl FittedRegressor {
    pub fn zero() -> Self {
        Self {
            spec: RegressorSpec::none(),
            model: Fitted::Zero,
            y_range: (0.0, 0.0),
            seed: None,
        }
    }

    pub(crate) fn new(spec: RegressorSpec, model: Fitted, y: &[f64], seed: Option<u64>) -> Self {
        Self {
            spec,
            model,
            y_range: y_range(y),
            seed,
        }
    }

    fn from_linear(spec: RegressorSpec, fit: LinearFit, y: &[f64]) -> Self {
        Self::new(spec, Fitted::Linear(fit), y, None)
    }

    pub fn spec(&self) -> &RegressorSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.model, Fitted::Zero)
    }

    /// `(min, max)` of the training targets.
    pub fn y_range(&self) -> (f64, f64) {
        self.y_range
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Individual trees of a forest or boosted ensemble; empty otherwise.
    pub fn trees(&self) -> &[Tree] {
        match &self.model {
            Fitted::Forest(t) => t,
            Fitted::Boosting { trees, .. } => trees,
            _ => &[],
        }
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        match &self.model {
            Fitted::Zero => 0.0,
            Fitted::Forest(trees) => trees.iter().map(|t| t.predict(x)).sum::<f64>() / trees.len() as f64,
            Fitted::Boosting {
                base,
                learning_rate,
                trees,
            } => base + learning_rate * trees.iter().map(|t| t.predict(x)).sum::<f64>(),
            Fitted::Linear(fit) => fit.predict(x),
        }
    }
}

fn y_range(y: &[f64]) -> (f64, f64) {
    y.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    })
}

/// Mean that returns exactly `c` for constant input, clamped to the data range.
pub(crate) fn stable_mean(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let mut it = values.clone();
    let Some(first) = it.next() else {
        return 0.0;
    };
    let (mut n, mut acc, mut lo, mut hi) = (1usize, 0.0, first, first);
    for v in it {
        n += 1;
        acc += v - first;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (first + acc / n as f64).clamp(lo, hi)
}
