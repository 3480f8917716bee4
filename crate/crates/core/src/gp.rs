//! Gaussian-process surrogate with a Matérn-5/2 kernel plus white noise.
//!
//! Inputs are expected in the unit cube. Targets are standardized before
//! fitting (after removing the least-squares line in [`MeanMode::Linear`]),
//! and predictions are mapped back to objective units. Hyperparameters
//! (isotropic length scale, signal variance, noise variance) are fitted by
//! maximizing the log marginal likelihood with a projected L-BFGS in
//! log-parameter space from several starting points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lbfgs::{self, LbfgsOptions};
use crate::linalg::{cholesky_in_place, cholesky_inverse, cholesky_solve, dot, solve_lower_in_place, SquareMatrix};
use crate::models::{fit_linear, LinearFit};
use crate::space::Rng;

const SQRT5: f64 = 2.236_067_977_499_79;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Diagonal jitter ladder tried in order when factorizing `K + σ_n² I`.
pub const JITTER_LADDER: [f64; 7] = [1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4];

/// Kernel hyperparameters, in standardized-target units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub length_scale: f64,
    pub signal_variance: f64,
    pub noise_variance: f64,
}

impl Default for KernelParams {
    fn default() -> Self {
        Self {
            length_scale: 0.5,
            signal_variance: 1.0,
            noise_variance: 1e-6,
        }
    }
}

impl KernelParams {
    pub const LENGTH_SCALE_BOUNDS: (f64, f64) = (1e-5, 1e5);
    pub const SIGNAL_VARIANCE_BOUNDS: (f64, f64) = (1e-6, 1e6);
    pub const NOISE_VARIANCE_BOUNDS: (f64, f64) = (1e-10, 1e1);

    /// `[ln ℓ, ln σ_f², ln σ_n²]`.
    pub fn to_log(&self) -> [f64; 3] {
        [
            self.length_scale.ln(),
            self.signal_variance.ln(),
            self.noise_variance.ln(),
        ]
    }

    pub fn from_log(v: &[f64]) -> Self {
        Self {
            length_scale: v[0].exp(),
            signal_variance: v[1].exp(),
            noise_variance: v[2].exp(),
        }
    }

    pub fn log_bounds() -> ([f64; 3], [f64; 3]) {
        let b = [
            Self::LENGTH_SCALE_BOUNDS,
            Self::SIGNAL_VARIANCE_BOUNDS,
            Self::NOISE_VARIANCE_BOUNDS,
        ];
        (b.map(|(lo, _)| lo.ln()), b.map(|(_, hi)| hi.ln()))
    }

    pub fn clamped(self) -> Self {
        let c = |v: f64, (lo, hi): (f64, f64)| v.clamp(lo, hi);
        Self {
            length_scale: c(self.length_scale, Self::LENGTH_SCALE_BOUNDS),
            signal_variance: c(self.signal_variance, Self::SIGNAL_VARIANCE_BOUNDS),
            noise_variance: c(self.noise_variance, Self::NOISE_VARIANCE_BOUNDS),
        }
    }
}

/// Matérn covariance with ν = 5/2 at distance `r`.
pub fn matern52(r: f64, params: &KernelParams) -> f64 {
    let s = SQRT5 * r / params.length_scale;
    params.signal_variance * (1.0 + s + s * s / 3.0) * (-s).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanMode {
    #[default]
    Zero,
    /// Least-squares line fitted once, GP on the residuals.
    Linear,
}

/// Log marginal likelihood and its gradient with respect to
/// `[ln ℓ, ln σ_f², ln σ_n²]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lml {
    pub value: f64,
    pub gradient: [f64; 3],
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn distance_matrix(inputs: &[Vec<f64>]) -> SquareMatrix {
    let n = inputs.len();
    let mut d = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..i {
            let r = euclidean(&inputs[i], &inputs[j]);
            d.set(i, j, r);
            d.set(j, i, r);
        }
    }
    d
}

/// Factorizes `K_f + (σ_n² + jitter) I`, climbing the jitter ladder on failure.
fn factorize(kf: &SquareMatrix, noise: f64) -> Result<(SquareMatrix, f64)> {
    for &jitter in &JITTER_LADDER {
        let mut l = kf.clone();
        for i in 0..l.n {
            l.data[i * l.n + i] += noise + jitter;
        }
        if cholesky_in_place(&mut l) {
            return Ok((l, jitter));
        }
    }
    Err(Error::IllConditioned {
        n: kf.n,
        jitter: JITTER_LADDER[JITTER_LADDER.len() - 1],
    })
}

/// Signal covariance (lower triangle) and, optionally, its derivative with
/// respect to `ln ℓ`.
fn covariance(dist: &SquareMatrix, p: &KernelParams, with_grad: bool) -> (SquareMatrix, Option<SquareMatrix>) {
    let n = dist.n;
    let mut kf = SquareMatrix::zeros(n);
    let mut dl = with_grad.then(|| SquareMatrix::zeros(n));
    let scale = SQRT5 / p.length_scale;
    for i in 0..n {
        for j in 0..=i {
            let s = scale * dist.get(i, j);
            let e = p.signal_variance * (-s).exp();
            kf.data[i * n + j] = (1.0 + s + s * s / 3.0) * e;
            if let Some(dl) = dl.as_mut() {
                dl.data[i * n + j] = s * s / 3.0 * (1.0 + s) * e;
            }
        }
    }
    (kf, dl)
}

fn lml_eval(dist: &SquareMatrix, y: &[f64], p: &KernelParams, with_grad: bool) -> Result<Lml> {
    let n = y.len();
    let (kf, dl) = covariance(dist, p, with_grad);
    let (l, _) = factorize(&kf, p.noise_variance)?;
    let alpha = cholesky_solve(&l, y);
    let fit: f64 = y.iter().zip(&alpha).map(|(a, b)| a * b).sum();
    let log_det: f64 = (0..n).map(|i| l.get(i, i).ln()).sum();
    let value = -0.5 * fit - log_det - 0.5 * n as f64 * LN_2PI;
    let mut gradient = [0.0; 3];
    if let Some(dl) = dl {
        let kinv = cholesky_inverse(&l);
        let (mut g_l, mut g_f, mut g_n) = (0.0, 0.0, 0.0);
        for i in 0..n {
            for j in 0..=i {
                let w = alpha[i] * alpha[j] - kinv.get(i, j);
                let mult = if i == j { 1.0 } else { 2.0 };
                g_l += mult * w * dl.get(i, j);
                g_f += mult * w * kf.get(i, j);
                if i == j {
                    g_n += w;
                }
            }
        }
        gradient = [0.5 * g_l, 0.5 * g_f, 0.5 * p.noise_variance * g_n];
    }
    Ok(Lml { value, gradient })
}

/// `−½ tᵀ(K+σ_n²I)⁻¹t − ½ log|K+σ_n²I| − (n/2) log 2π` for the given
/// targets `t`, with the analytic gradient in log-parameter space.
///
/// [`GpModel::fit`] applies this to the standardized (and, in linear mode,
/// de-trended) targets.
pub fn log_marginal_likelihood(inputs: &[Vec<f64>], targets: &[f64], params: &KernelParams) -> Result<Lml> {
    lml_eval(&distance_matrix(inputs), targets, params, true)
}

#[derive(Debug, Clone)]
pub struct GpFitOptions {
    /// Total number of local searches: one from `warm_start` (or the
    /// default parameters) plus `restarts - 1` log-uniform draws.
    pub restarts: usize,
    pub warm_start: Option<KernelParams>,
    pub lbfgs: LbfgsOptions,
}

impl Default for GpFitOptions {
    fn default() -> Self {
        Self {
            restarts: 5,
            warm_start: None,
            lbfgs: LbfgsOptions {
                max_iter: 50,
                gtol: 1e-5,
                ftol: 1e-9,
                ..LbfgsOptions::default()
            },
        }
    }
}

/// Posterior at one point, in objective units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub mean: f64,
    pub std_dev: f64,
}

/// Fitted GP. Immutable after construction.
#[derive(Debug, Clone)]
pub struct GpModel {
    params: KernelParams,
    mean_mode: MeanMode,
    linear_mean: Option<LinearFit>,
    chol: SquareMatrix,
    alpha: Vec<f64>,
    train_inputs: Vec<Vec<f64>>,
    y_offset: f64,
    y_scale: f64,
    jitter: f64,
    lml: f64,
}

struct Prepared {
    linear_mean: Option<LinearFit>,
    targets: Vec<f64>,
    offset: f64,
    scale: f64,
}

fn prepare(inputs: &[Vec<f64>], y: &[f64], mean_mode: MeanMode) -> Result<Prepared> {
    if inputs.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: inputs.len(),
            got: y.len(),
        });
    }
    if y.len() < 2 {
        return Err(Error::NotEnoughData {
            needed: 2,
            have: y.len(),
        });
    }
    let linear_mean = match mean_mode {
        MeanMode::Zero => None,
        MeanMode::Linear => Some(fit_linear(inputs, y)),
    };
    let resid: Vec<f64> = match &linear_mean {
        None => y.to_vec(),
        Some(f) => inputs.iter().zip(y).map(|(x, v)| v - f.predict(x)).collect(),
    };
    let n = resid.len() as f64;
    let offset = resid.iter().sum::<f64>() / n;
    let sd = (resid.iter().map(|v| (v - offset).powi(2)).sum::<f64>() / n).sqrt();
    let scale = if sd < 1e-12 { 1.0 } else { sd };
    let targets = resid.iter().map(|v| (v - offset) / scale).collect();
    Ok(Prepared {
        linear_mean,
        targets,
        offset,
        scale,
    })
}

impl GpModel {
    /// Conditions on the data with fixed hyperparameters.
    pub fn with_params(inputs: &[Vec<f64>], y: &[f64], mean_mode: MeanMode, params: KernelParams) -> Result<Self> {
        let prep = prepare(inputs, y, mean_mode)?;
        let dist = distance_matrix(inputs);
        Self::assemble(inputs, &dist, prep, mean_mode, params)
    }

    fn assemble(
        inputs: &[Vec<f64>],
        dist: &SquareMatrix,
        prep: Prepared,
        mean_mode: MeanMode,
        params: KernelParams,
    ) -> Result<Self> {
        let (kf, _) = covariance(dist, &params, false);
        let (chol, jitter) = factorize(&kf, params.noise_variance)?;
        let alpha = cholesky_solve(&chol, &prep.targets);
        let n = prep.targets.len();
        let fit: f64 = prep.targets.iter().zip(&alpha).map(|(a, b)| a * b).sum();
        let log_det: f64 = (0..n).map(|i| chol.get(i, i).ln()).sum();
        Ok(Self {
            params,
            mean_mode,
            linear_mean: prep.linear_mean,
            chol,
            alpha,
            train_inputs: inputs.to_vec(),
            y_offset: prep.offset,
            y_scale: prep.scale,
            jitter,
            lml: -0.5 * fit - log_det - 0.5 * n as f64 * LN_2PI,
        })
    }

    /// Fits hyperparameters by multi-start maximization of the log marginal
    /// likelihood. Deterministic given the data and the state of `rng`.
    pub fn fit(
        inputs: &[Vec<f64>],
        y: &[f64],
        mean_mode: MeanMode,
        opts: &GpFitOptions,
        rng: &mut Rng,
    ) -> Result<Self> {
        let prep = prepare(inputs, y, mean_mode)?;
        let dist = distance_matrix(inputs);
        let (lower, upper) = KernelParams::log_bounds();

        let mut starts = vec![opts.warm_start.unwrap_or_default().clamped().to_log()];
        for _ in 1..opts.restarts.max(1) {
            let mut s = [0.0; 3];
            for k in 0..3 {
                s[k] = rng.uniform_in(lower[k], upper[k]);
            }
            starts.push(s);
        }

        let targets = &prep.targets;
        let objective = |theta: &[f64]| match lml_eval(&dist, targets, &KernelParams::from_log(theta), true) {
            Ok(l) => (-l.value, l.gradient.iter().map(|g| -g).collect()),
            Err(_) => (f64::INFINITY, vec![0.0; 3]),
        };

        let mut best: Option<(f64, Vec<f64>)> = None;
        for start in &starts {
            let r = lbfgs::minimize(objective, start, &lower, &upper, opts.lbfgs);
            if r.f.is_finite() && best.as_ref().is_none_or(|(f, _)| r.f < *f) {
                best = Some((r.f, r.x));
            }
        }
        let (_, theta) = best.ok_or(Error::IllConditioned {
            n: y.len(),
            jitter: JITTER_LADDER[JITTER_LADDER.len() - 1],
        })?;
        Self::assemble(inputs, &dist, prep, mean_mode, KernelParams::from_log(&theta))
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    pub fn mean_mode(&self) -> MeanMode {
        self.mean_mode
    }

    pub fn linear_mean(&self) -> Option<&LinearFit> {
        self.linear_mean.as_ref()
    }

    /// Log marginal likelihood of the standardized targets at the fitted parameters.
    pub fn log_marginal_likelihood(&self) -> f64 {
        self.lml
    }

    /// Jitter that made the factorization succeed.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// `(offset, scale)` with `standardized = (residual - offset) / scale`.
    pub fn standardization(&self) -> (f64, f64) {
        (self.y_offset, self.y_scale)
    }

    pub fn train_inputs(&self) -> &[Vec<f64>] {
        &self.train_inputs
    }

    /// Relative Frobenius error of `L Lᵀ` against `K + (σ_n² + jitter) I`.
    pub fn factorization_error(&self) -> f64 {
        let n = self.train_inputs.len();
        let (kf, _) = covariance(&distance_matrix(&self.train_inputs), &self.params, false);
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..n {
            for j in 0..=i {
                let mut k = kf.get(i, j);
                if i == j {
                    k += self.params.noise_variance + self.jitter;
                }
                let llt: f64 = (0..=j).map(|m| self.chol.get(i, m) * self.chol.get(j, m)).sum();
                let w = if i == j { 1.0 } else { 2.0 };
                num += w * (llt - k).powi(2);
                den += w * k * k;
            }
        }
        (num / den).sqrt()
    }

    /// Posterior mean and standard deviation of the latent function in
    /// standardized units (no mean function, no noise).
    pub fn predict_standardized(&self, x: &[f64]) -> (f64, f64) {
        let mut k: Vec<f64> = self
            .train_inputs
            .iter()
            .map(|xi| matern52(euclidean(x, xi), &self.params))
            .collect();
        let mean = dot(&k, &self.alpha);
        solve_lower_in_place(&self.chol, &mut k);
        let var = (self.params.signal_variance - dot(&k, &k)).max(0.0);
        (mean, var.sqrt())
    }

    /// [`predict_standardized`](Self::predict_standardized) for many
    /// points. Candidates are processed in blocks so the triangular solve
    /// runs across points; results agree with the pointwise version to
    /// rounding.
    pub fn predict_standardized_batch(&self, xs: &[Vec<f64>]) -> Vec<(f64, f64)> {
        const BLOCK: usize = 32;
        let n = self.train_inputs.len();
        let mut out = Vec::with_capacity(xs.len());
        let mut v = vec![0.0; n * BLOCK];
        for chunk in xs.chunks(BLOCK) {
            let b = chunk.len();
            for (i, xi) in self.train_inputs.iter().enumerate() {
                let row = &mut v[i * b..(i + 1) * b];
                for (r, x) in row.iter_mut().zip(chunk) {
                    *r = matern52(euclidean(x, xi), &self.params);
                }
            }
            let mut mean = vec![0.0; b];
            for i in 0..n {
                let a = self.alpha[i];
                for (m, k) in mean.iter_mut().zip(&v[i * b..(i + 1) * b]) {
                    *m += a * k;
                }
            }
            // forward substitution L V = K*, one row of V at a time
            for i in 0..n {
                let l_row = self.chol.row(i);
                let (done, rest) = v.split_at_mut(i * b);
                let row = &mut rest[..b];
                for (j, &lij) in l_row[..i].iter().enumerate() {
                    if lij != 0.0 {
                        for (r, p) in row.iter_mut().zip(&done[j * b..(j + 1) * b]) {
                            *r -= lij * p;
                        }
                    }
                }
                let inv = 1.0 / l_row[i];
                row.iter_mut().for_each(|r| *r *= inv);
            }
            let mut explained = vec![0.0; b];
            for i in 0..n {
                for (e, r) in explained.iter_mut().zip(&v[i * b..(i + 1) * b]) {
                    *e += r * r;
                }
            }
            for (m, e) in mean.into_iter().zip(explained) {
                out.push((m, (self.params.signal_variance - e).max(0.0).sqrt()));
            }
        }
        out
    }

    /// [`predict`](Self::predict) for many points.
    pub fn predict_batch(&self, xs: &[Vec<f64>]) -> Vec<Prediction> {
        self.predict_standardized_batch(xs)
            .into_iter()
            .zip(xs)
            .map(|((m, s), x)| {
                let trend = self.linear_mean.as_ref().map_or(0.0, |f| f.predict(x));
                Prediction {
                    mean: trend + self.y_offset + self.y_scale * m,
                    std_dev: self.y_scale * s,
                }
            })
            .collect()
    }

    /// Posterior in objective units.
    pub fn predict(&self, x: &[f64]) -> Prediction {
        let (m, s) = self.predict_standardized(x);
        let trend = self.linear_mean.as_ref().map_or(0.0, |f| f.predict(x));
        Prediction {
            mean: trend + self.y_offset + self.y_scale * m,
            std_dev: self.y_scale * s,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::sample_unit;

    fn noiseless() -> KernelParams {
        KernelParams {
            length_scale: 0.3,
            signal_variance: 1.0,
            noise_variance: 1e-10,
        }
    }

    #[test]
    fn matern_values() {
        let p = KernelParams {
            length_scale: 1.0,
            signal_variance: 1.0,
            noise_variance: 0.0,
        };
        assert_eq!(matern52(0.0, &p), 1.0);
        assert!(matern52(1e3, &p) < 1e-300);
        // (1 + √5 + 5/3) e^{-√5}, evaluated with mpmath at 30 digits.
        assert!((matern52(1.0, &p) - 0.523_994_108_831_820_3).abs() < 1e-15);
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let v = matern52(i as f64 * 0.05, &p);
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn one_point_lml_closed_form() {
        let p = KernelParams {
            length_scale: 0.7,
            signal_variance: 1.3,
            noise_variance: 0.2,
        };
        let y = 0.9;
        let l = log_marginal_likelihood(&[vec![0.4, 0.1]], &[y], &p).unwrap();
        let v = p.signal_variance + p.noise_variance + 1e-10;
        let expect = -0.5 * y * y / v - 0.5 * v.ln() - 0.5 * LN_2PI;
        assert!((l.value - expect).abs() < 1e-12);
    }

    #[test]
    fn symmetric_pair_predicts_zero_midpoint() {
        let gp = GpModel::with_params(&[vec![0.0], vec![1.0]], &[-1.0, 1.0], MeanMode::Zero, noiseless()).unwrap();
        assert!(gp.predict(&[0.5]).mean.abs() < 1e-8);
    }

    #[test]
    fn interpolates_training_points() {
        let x = vec![vec![0.2], vec![0.7]];
        let y = [3.0, -2.0];
        let gp = GpModel::with_params(&x, &y, MeanMode::Zero, noiseless()).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            let p = gp.predict(xi);
            assert!((p.mean - yi).abs() < 1e-6);
            assert!(p.std_dev < 1e-2);
        }
    }

    #[test]
    fn reverts_to_prior_far_away() {
        let x = vec![vec![0.0, 0.0], vec![0.1, 0.0], vec![0.0, 0.1]];
        let y = [1.0, 2.0, 0.5];
        let p = KernelParams {
            length_scale: 0.05,
            ..noiseless()
        };
        let gp = GpModel::with_params(&x, &y, MeanMode::Zero, p).unwrap();
        let (m, s) = gp.predict_standardized(&[1.0, 1.0]);
        assert!(m.abs() < 1e-10);
        assert!((s - 1.0).abs() < 1e-10);
        let (offset, _) = gp.standardization();
        assert!((gp.predict(&[1.0, 1.0]).mean - offset).abs() < 1e-9);
    }

    #[test]
    fn duplicate_inputs_fit() {
        let x = vec![vec![0.5], vec![0.5], vec![0.1], vec![0.9]];
        let y = [1.0, 2.0, 0.0, 0.3];
        let gp = GpModel::fit(&x, &y, MeanMode::Zero, &GpFitOptions::default(), &mut Rng::new(3)).unwrap();
        assert!(gp.params().noise_variance + gp.jitter() > 0.0);
        assert!(gp.predict(&[0.5]).mean.is_finite());
    }

    #[test]
    fn linear_mean_on_constant_data() {
        let x = sample_unit(3, 8, &mut Rng::new(4));
        let y = vec![2.5; 8];
        let gp = GpModel::fit(&x, &y, MeanMode::Linear, &GpFitOptions::default(), &mut Rng::new(4)).unwrap();
        let lm = gp.linear_mean().unwrap();
        assert!(lm.weights.iter().all(|w| w.abs() < 1e-8));
        assert!((lm.intercept - 2.5).abs() < 1e-8);
    }

    #[test]
    fn linear_mean_reproduces_exact_line() {
        let x = sample_unit(2, 12, &mut Rng::new(5));
        let line = |v: &[f64]| 4.0 * v[0] - 1.5 * v[1] + 0.25;
        let y: Vec<f64> = x.iter().map(|v| line(v)).collect();
        let gp = GpModel::fit(&x, &y, MeanMode::Linear, &GpFitOptions::default(), &mut Rng::new(5)).unwrap();
        for q in sample_unit(2, 200, &mut Rng::new(6)) {
            assert!((gp.predict(&q).mean - line(&q)).abs() < 1e-6);
        }
    }

    #[test]
    fn factorization_reconstructs() {
        let x = sample_unit(2, 30, &mut Rng::new(7));
        let y: Vec<f64> = x.iter().map(|v| (5.0 * v[0]).sin() + v[1]).collect();
        let gp = GpModel::fit(&x, &y, MeanMode::Zero, &GpFitOptions::default(), &mut Rng::new(7)).unwrap();
        assert!(gp.factorization_error() < 1e-8);
    }

    #[test]
    fn too_little_data_is_an_error() {
        let r = GpModel::fit(
            &[vec![0.5]],
            &[1.0],
            MeanMode::Zero,
            &GpFitOptions::default(),
            &mut Rng::new(0),
        );
        assert!(matches!(r, Err(Error::NotEnoughData { .. })));
    }

    #[test]
    fn non_finite_params_fail_to_factorize() {
        let x = vec![vec![0.1], vec![0.2]];
        let p = KernelParams {
            signal_variance: f64::NAN,
            ..KernelParams::default()
        };
        assert!(matches!(
            log_marginal_likelihood(&x, &[0.0, 1.0], &p),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn batch_matches_pointwise() {
        let mut rng = Rng::new(4);
        let x = sample_unit(3, 70, &mut rng);
        let y: Vec<f64> = x.iter().map(|v| v[0].sin() + v[1] * v[2]).collect();
        let gp = GpModel::fit(&x, &y, MeanMode::Linear, &GpFitOptions::default(), &mut rng).unwrap();
        let q = sample_unit(3, 150, &mut rng);
        let batch = gp.predict_batch(&q);
        assert_eq!(batch.len(), 150);
        for (p, z) in batch.iter().zip(&q) {
            let s = gp.predict(z);
            assert!((p.mean - s.mean).abs() < 1e-6, "{p:?} {s:?}");
            assert!((p.std_dev - s.std_dev).abs() < 1e-6);
        }
    }
}
