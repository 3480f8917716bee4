use serde::{Deserialize, Serialize};

use crate::linalg::{cholesky_in_place, cholesky_solve, SquareMatrix};

/// Ridge damping on the slope coefficients; keeps rank-deficient designs solvable.
pub const RIDGE: f64 = 1e-8;

/// `y ≈ weights · x + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub weights: Vec<f64>,
    pub intercept: f64,
}

impl LinearFit {
    pub fn predict(&self, x: &[f64]) -> f64 {
        self.intercept + self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>()
    }
}

/// Least squares with an undamped intercept, solved on centred data.
pub fn fit_linear(x: &[Vec<f64>], y: &[f64]) -> LinearFit {
    assert!(!y.is_empty(), "cannot fit a linear model on zero rows");
    let n = y.len() as f64;
    let d = x[0].len();
    let x_mean: Vec<f64> = (0..d).map(|j| x.iter().map(|r| r[j]).sum::<f64>() / n).collect();
    let y_mean = y.iter().sum::<f64>() / n;

    let mut gram = SquareMatrix::zeros(d);
    let mut rhs = vec![0.0; d];
    for (row, &yi) in x.iter().zip(y) {
        let yc = yi - y_mean;
        for a in 0..d {
            let ca = row[a] - x_mean[a];
            rhs[a] += ca * yc;
            for b in 0..=a {
                gram.data[a * d + b] += ca * (row[b] - x_mean[b]);
            }
        }
    }
    for a in 0..d {
        gram.data[a * d + a] += RIDGE;
    }
    let mut damping = RIDGE;
    let mut factor = gram.clone();
    while !cholesky_in_place(&mut factor) {
        // Only reachable through catastrophic rounding; escalate the ridge.
        damping *= 10.0;
        factor = gram.clone();
        for a in 0..d {
            factor.data[a * d + a] += damping;
        }
    }
    let weights = cholesky_solve(&factor, &rhs);
    let intercept = y_mean - weights.iter().zip(&x_mean).map(|(w, m)| w * m).sum::<f64>();
    LinearFit { weights, intercept }
}
