//! Closed-form synthetic test functions on their usual literature domains.
//!
//! | name              | d  | domain                    | optimum                 |
//! |-------------------|----|---------------------------|-------------------------|
//! | `ackley`          | 2  | [-32.768, 32.768]^2       | 0 at 0                  |
//! | `branin`          | 2  | [-5, 10] x [0, 15]        | 0.397887… at (π, 2.275) |
//! | `colville`        | 4  | [-10, 10]^4               | 0 at (1, 1, 1, 1)       |
//! | `eggholder`       | 2  | [-512, 512]^2             | -959.6407 at (512, 404.2318) |
//! | `goldstein_price` | 2  | [-2, 2]^2                 | 3 at (0, -1)            |
//! | `hartmann6`       | 6  | [0, 1]^6                  | -3.32237                |
//! | `michalewicz`     | 10 | [0, π]^10 (m = 10)        | -9.66015                |
//! | `rosenbrock`      | 2  | [-5, 10]^2                | 0 at (1, 1)             |
//! | `six_hump_camel`  | 2  | [-3, 3] x [-2, 2]         | -1.031628…              |
//! | `styblinski_tang` | 2  | [-5, 5]^2                 | -39.16617 d             |
//!
//! All are minimization problems. Minimizers that are not exact
//! closed-form values were refined numerically to full double precision
//! and frozen here; Michalewicz is separable, so its optimum is the sum of
//! ten one-dimensional minima located by dense grid search plus bounded
//! refinement.

use std::f64::consts::{E, PI};

pub(crate) fn ackley(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

pub(crate) fn branin(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let b = 5.1 / (4.0 * PI * PI);
    let c = 5.0 / PI;
    let t = 1.0 / (8.0 * PI);
    (x2 - b * x1 * x1 + c * x1 - 6.0).powi(2) + 10.0 * (1.0 - t) * x1.cos() + 10.0
}

pub(crate) fn colville(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    100.0 * (x1 * x1 - x2).powi(2)
        + (x1 - 1.0).powi(2)
        + (x3 - 1.0).powi(2)
        + 90.0 * (x3 * x3 - x4).powi(2)
        + 10.1 * ((x2 - 1.0).powi(2) + (x4 - 1.0).powi(2))
        + 19.8 * (x2 - 1.0) * (x4 - 1.0)
}

pub(crate) fn eggholder(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    -(x2 + 47.0) * (x2 + x1 / 2.0 + 47.0).abs().sqrt().sin() - x1 * (x1 - (x2 + 47.0)).abs().sqrt().sin()
}

pub(crate) fn goldstein_price(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let a =
        1.0 + (x1 + x2 + 1.0).powi(2) * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2);
    let b = 30.0
        + (2.0 * x1 - 3.0 * x2).powi(2)
            * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2);
    a * b
}

const HARTMANN_ALPHA: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
const HARTMANN_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];
const HARTMANN_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

pub(crate) fn hartmann6(x: &[f64]) -> f64 {
    -(0..4)
        .map(|i| {
            let inner: f64 = (0..6)
                .map(|j| HARTMANN_A[i][j] * (x[j] - HARTMANN_P[i][j]).powi(2))
                .sum();
            HARTMANN_ALPHA[i] * (-inner).exp()
        })
        .sum::<f64>()
}

pub(crate) fn michalewicz_term(i: usize, v: f64) -> f64 {
    -v.sin() * ((i as f64 + 1.0) * v * v / PI).sin().powi(20)
}

pub(crate) fn michalewicz(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, &v)| michalewicz_term(i, v)).sum()
}

pub(crate) fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

pub(crate) fn six_hump_camel(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    (4.0 - 2.1 * x1 * x1 + x1.powi(4) / 3.0) * x1 * x1 + x1 * x2 + (-4.0 + 4.0 * x2 * x2) * x2 * x2
}

pub(crate) fn styblinski_tang(x: &[f64]) -> f64 {
    0.5 * x.iter().map(|v| v.powi(4) - 16.0 * v * v + 5.0 * v).sum::<f64>()
}

pub(crate) const BRANIN_MIN: f64 = 0.397_887_357_729_738_16;
pub(crate) const EGGHOLDER_ARGMIN: [f64; 2] = [512.0, 404.231_804_993_864_6];
pub(crate) const EGGHOLDER_MIN: f64 = -959.640_662_720_850_7;
pub(crate) const CAMEL_ARGMIN: [f64; 2] = [0.089_842_011_817_429_17, -0.712_656_405_622_466_9];
pub(crate) const CAMEL_MIN: f64 = -1.031_628_453_489_877_4;
pub(crate) const HARTMANN_ARGMIN: [f64; 6] = [
    0.201_689_509_234_095_84,
    0.150_010_688_764_179_22,
    0.476_873_972_432_962_2,
    0.275_332_428_312_954,
    0.311_651_611_575_136_7,
    0.657_300_529_380_464_1,
];
pub(crate) const HARTMANN_MIN: f64 = -3.322_368_011_415_512_5;
pub(crate) const STYBLINSKI_ARGMIN: f64 = -2.903_534_030_080_572;
pub(crate) const STYBLINSKI_MIN_PER_DIM: f64 = -39.166_165_703_771_426;
pub(crate) const MICHALEWICZ_ARGMIN: [f64; 10] = [
    2.202_905_519_952_912_6,
    1.570_796_326_619_544_8,
    1.284_991_570_272_413,
    1.923_058_469_616_361_7,
    1.720_469_772_221_191_7,
    1.570_796_326_617_729_4,
    1.454_413_971_098_677,
    1.756_086_520_760_216,
    1.655_717_416_547_573_2,
    1.570_796_326_617_582_4,
];
pub(crate) const MICHALEWICZ_MIN: f64 = -9.660_151_715_641_34;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branin_closed_form_minimum() {
        // f(π, 2.275) = 10 / (8π).
        assert!((branin(&[PI, 2.275]) - 10.0 / (8.0 * PI)).abs() < 1e-14);
        assert!((branin(&[PI, 2.275]) - 0.397887).abs() < 1e-4);
        assert!((branin(&[-PI, 12.275]) - BRANIN_MIN).abs() < 1e-12);
        assert!((branin(&[9.42478, 2.475]) - BRANIN_MIN).abs() < 1e-6);
    }

    #[test]
    fn branin_grid_oracle() {
        let mut best = f64::INFINITY;
        for i in 0..=1500 {
            for j in 0..=1500 {
                let x = [-5.0 + 15.0 * i as f64 / 1500.0, 15.0 * j as f64 / 1500.0];
                best = best.min(branin(&x));
            }
        }
        assert!(best >= BRANIN_MIN - 1e-12 && best - BRANIN_MIN < 1e-3, "{best}");
    }

    #[test]
    fn michalewicz_separable_oracle() {
        // Dense grid per coordinate, then golden-section refinement.
        let mut total = 0.0;
        for i in 0..10 {
            let n = 200_000;
            let (mut bi, mut bv) = (0, f64::INFINITY);
            for k in 0..=n {
                let v = michalewicz_term(i, PI * k as f64 / n as f64);
                if v < bv {
                    bv = v;
                    bi = k;
                }
            }
            let h = PI / n as f64;
            let (mut a, mut b) = ((bi as f64 * h - h).max(0.0), (bi as f64 * h + h).min(PI));
            let g = (5f64.sqrt() - 1.0) / 2.0;
            for _ in 0..200 {
                let c = b - g * (b - a);
                let d = a + g * (b - a);
                if michalewicz_term(i, c) < michalewicz_term(i, d) {
                    b = d;
                } else {
                    a = c;
                }
            }
            let xm = 0.5 * (a + b);
            assert!((xm - MICHALEWICZ_ARGMIN[i]).abs() < 1e-6, "coord {i}: {xm}");
            total += michalewicz_term(i, xm);
        }
        assert!((total - MICHALEWICZ_MIN).abs() < 1e-12, "{total}");
    }

    #[test]
    fn known_values() {
        assert!(ackley(&[0.0, 0.0]).abs() < 1e-12);
        assert_eq!(rosenbrock(&[1.0, 1.0]), 0.0);
        assert_eq!(colville(&[1.0; 4]), 0.0);
        assert_eq!(goldstein_price(&[0.0, -1.0]), 3.0);
        assert!((styblinski_tang(&[STYBLINSKI_ARGMIN; 2]) - 2.0 * STYBLINSKI_MIN_PER_DIM).abs() < 1e-12);
    }
}
