use super::tree::fit_tree_on;
use super::{stable_mean, Fitted, FittedRegressor, RegressorSpec};

/// Stagewise least-squares gradient boosting: each stage fits a tree to the
/// current residuals. Prediction is `mean(y) + learning_rate * Σ tree_k(x)`.
pub fn fit_gbm(x: &[Vec<f64>], y: &[f64], spec: &RegressorSpec) -> FittedRegressor {
    assert!(!y.is_empty(), "cannot fit boosting on zero rows");
    let base = stable_mean(y.iter().copied());
    let rows: Vec<usize> = (0..y.len()).collect();
    let params = spec.tree_params();
    let mut stage_sum = vec![0.0; y.len()];
    let mut trees = Vec::with_capacity(spec.n_estimators);
    for _ in 0..spec.n_estimators {
        let residual: Vec<f64> = y
            .iter()
            .zip(&stage_sum)
            .map(|(yi, s)| yi - (base + spec.learning_rate * s))
            .collect();
        let tree = fit_tree_on(x, &residual, &rows, params, None);
        for (s, xi) in stage_sum.iter_mut().zip(x) {
            *s += tree.predict(xi);
        }
        trees.push(tree);
    }
    FittedRegressor::new(
        spec.clone(),
        Fitted::Boosting {
            base,
            learning_rate: spec.learning_rate,
            trees,
        },
        y,
        None,
    )
}
