use super::tree::fit_tree_on;
use super::{Fitted, FittedRegressor, RegressorSpec};
use crate::space::{Rng, Stream};

/// Bagged CART ensemble; prediction is the mean over trees.
///
/// Tree `t` draws its resample (and any feature subsets) from its own
/// stream derived from one seed taken from `rng`, so the fit is reproducible
/// and independent of the order trees are built in.
pub fn fit_forest(x: &[Vec<f64>], y: &[f64], spec: &RegressorSpec, rng: &mut Rng) -> FittedRegressor {
    assert!(!y.is_empty(), "cannot fit a forest on zero rows");
    let seed = rng.next_seed();
    let n = y.len();
    let params = spec.tree_params();
    let trees = (0..spec.n_estimators.max(1))
        .map(|t| {
            let mut tree_rng = Rng::derive(seed, Stream::Regressor, t as u64);
            let rows: Vec<usize> = if spec.bootstrap {
                (0..n).map(|_| tree_rng.below(n)).collect()
            } else {
                (0..n).collect()
            };
            fit_tree_on(x, y, &rows, params, Some(&mut tree_rng))
        })
        .collect();
    FittedRegressor::new(spec.clone(), Fitted::Forest(trees), y, Some(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{fit_tree, TreeParams};

    fn data(seed: u64, n: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
        let mut rng = Rng::new(seed);
        let x: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.uniform(), rng.uniform()]).collect();
        let y = x.iter().map(|r| (6.0 * r[0]).cos() * r[1] + r[0]).collect();
        (x, y)
    }

    #[test]
    fn single_unbootstrapped_tree_equals_cart() {
        let (x, y) = data(1, 40);
        let spec = RegressorSpec {
            n_estimators: 1,
            bootstrap: false,
            ..RegressorSpec::random_forest()
        };
        let forest = fit_forest(&x, &y, &spec, &mut Rng::new(3));
        let tree = fit_tree(&x, &y, TreeParams::default(), None);
        let mut q = Rng::new(9);
        for _ in 0..50 {
            let p = [q.uniform(), q.uniform()];
            assert_eq!(forest.predict(&p), tree.predict(&p));
        }
    }

    #[test]
    fn constant_target() {
        let (x, _) = data(2, 25);
        let y = vec![-1.25; 25];
        let f = fit_forest(&x, &y, &RegressorSpec::random_forest(), &mut Rng::new(0));
        assert_eq!(f.predict(&[0.3, 0.9]), -1.25);
    }

    #[test]
    fn prediction_is_mean_of_trees() {
        let (x, y) = data(3, 30);
        let f = fit_forest(&x, &y, &RegressorSpec::random_forest(), &mut Rng::new(4));
        assert_eq!(f.trees().len(), 20);
        let mut q = Rng::new(10);
        for _ in 0..20 {
            let p = [q.uniform(), q.uniform()];
            let mean = f.trees().iter().map(|t| t.predict(&p)).sum::<f64>() / 20.0;
            assert!((f.predict(&p) - mean).abs() <= 1e-12);
        }
    }

    #[test]
    fn deterministic_and_bounded() {
        let (x, y) = data(4, 35);
        let spec = RegressorSpec::random_forest();
        let a = fit_forest(&x, &y, &spec, &mut Rng::new(8));
        let b = fit_forest(&x, &y, &spec, &mut Rng::new(8));
        let c = fit_forest(&x, &y, &spec, &mut Rng::new(9));
        let (lo, hi) = a.y_range();
        let mut q = Rng::new(11);
        let mut differs = false;
        for _ in 0..100 {
            let p = [q.uniform(), q.uniform()];
            assert_eq!(a.predict(&p), b.predict(&p));
            let v = a.predict(&p);
            assert!(v >= lo && v <= hi);
            differs |= a.predict(&p) != c.predict(&p);
        }
        assert!(differs, "different seeds should give different bootstraps");
    }

    #[test]
    fn seed_variance_is_bounded() {
        // Mean squared disagreement between two seeds stays well below the
        // target variance.
        let (x, y) = data(5, 60);
        let var_y = {
            let m = y.iter().sum::<f64>() / y.len() as f64;
            y.iter().map(|v| (v - m).powi(2)).sum::<f64>() / y.len() as f64
        };
        let spec = RegressorSpec::random_forest();
        let a = fit_forest(&x, &y, &spec, &mut Rng::new(1));
        let b = fit_forest(&x, &y, &spec, &mut Rng::new(2));
        let mut q = Rng::new(12);
        let msd = (0..200)
            .map(|_| {
                let p = [q.uniform(), q.uniform()];
                (a.predict(&p) - b.predict(&p)).powi(2)
            })
            .sum::<f64>()
            / 200.0;
        assert!(msd < 0.5 * var_y, "msd {msd} var {var_y}");
    }

    #[test]
    fn feature_subsampling_is_deterministic() {
        let (x, y) = data(6, 30);
        let spec = RegressorSpec {
            max_features: Some(1),
            ..RegressorSpec::random_forest()
        };
        let a = fit_forest(&x, &y, &spec, &mut Rng::new(2));
        let b = fit_forest(&x, &y, &spec, &mut Rng::new(2));
        assert_eq!(a, b);
    }
}
