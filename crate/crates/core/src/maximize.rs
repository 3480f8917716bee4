//! Derivative-free maximization of an acquisition over the unit cube.
//!
//! Tree-based corrective terms make the augmented acquisition piecewise
//! constant plus smooth, so gradients are unavailable at split boundaries.
//! The search scores a block of seeded uniform candidates, then refines the
//! best few with a box-clipped Nelder–Mead.

use std::cell::Cell;

use crate::space::{sample_unit, Rng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximizeOptions {
    pub n_candidates: usize,
    /// Number of top candidates refined locally.
    pub n_starts: usize,
    /// Evaluation budget per local refinement.
    pub max_evals: usize,
    /// Edge length of the initial simplex, in unit-cube coordinates.
    pub initial_step: f64,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        Self {
            n_candidates: 10_000,
            n_starts: 10,
            max_evals: 200,
            initial_step: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    pub x: Vec<f64>,
    pub value: f64,
}

fn score(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

fn clip(x: &mut [f64]) {
    for v in x {
        *v = v.clamp(0.0, 1.0);
    }
}

/// Indices of the `k` largest values; ties keep the lower index first.
fn top_k(values: &[f64], k: usize) -> Vec<usize> {
    let mut top: Vec<usize> = Vec::with_capacity(k + 1);
    for (i, &v) in values.iter().enumerate() {
        let pos = top.partition_point(|&j| values[j] >= v);
        if pos < k {
            top.insert(pos, i);
            top.truncate(k);
        }
    }
    top
}

/// Nelder–Mead ascent with every trial point clipped into `[0, 1]^d`.
pub fn nelder_mead_box<F>(f: &F, start: &[f64], step: f64, max_evals: usize) -> Maximum
where
    F: Fn(&[f64]) -> f64,
{
    let d = start.len();
    let evals = Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        -score(f(x))
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let x0 = start.to_vec();
    let f0 = eval(&x0);
    simplex.push((x0, f0));
    for j in 0..d {
        let mut x = start.to_vec();
        x[j] = if x[j] + step <= 1.0 { x[j] + step } else { x[j] - step };
        clip(&mut x);
        let fx = eval(&x);
        simplex.push((x, fx));
    }

    let sort = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    sort(&mut simplex);
    while evals.get() + 2 <= max_evals {
        let best = simplex[0].1;
        let worst = simplex[d].1;
        let spread = (0..d)
            .map(|j| {
                simplex
                    .iter()
                    .map(|p| p.0[j])
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
            })
            .map(|(lo, hi)| hi - lo)
            .fold(0.0, f64::max);
        if (worst - best).abs() <= 1e-12 * (1.0 + best.abs()) && spread < 1e-9 {
            break;
        }

        let mut centroid = vec![0.0; d];
        for (p, _) in &simplex[..d] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / d as f64;
            }
        }
        let along = |t: f64| {
            let mut x: Vec<f64> = centroid
                .iter()
                .zip(&simplex[d].0)
                .map(|(c, w)| c + t * (c - w))
                .collect();
            clip(&mut x);
            x
        };

        let xr = along(1.0);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = eval(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[d].1 {
                let xc = along(0.5);
                let fc = eval(&xc);
                (xc, fc)
            } else {
                let xc = along(-0.5);
                let fc = eval(&xc);
                (xc, fc)
            };
            if fc < simplex[d].1.min(fr) {
                simplex[d] = (xc, fc);
            } else {
                if evals.get() + d > max_evals {
                    break;
                }
                let x_best = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    let mut x: Vec<f64> = x_best.iter().zip(&p.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
                    clip(&mut x);
                    let fx = eval(&x);
                    *p = (x, fx);
                }
            }
        }
        sort(&mut simplex);
    }
    let (x, v) = simplex.swap_remove(0);
    Maximum { x, value: -v }
}

/// Maximizes `acq` over `[0, 1]^dim`. Deterministic given the state of
/// `rng`; the returned point is always inside the cube. Ties resolve to the
/// earliest candidate.
pub fn maximize_acq<F>(acq: F, dim: usize, opts: &MaximizeOptions, rng: &mut Rng) -> Maximum
where
    F: Fn(&[f64]) -> f64,
{
    maximize_acq_batched(
        &acq,
        |zs: &[Vec<f64>]| zs.iter().map(|z| acq(z)).collect(),
        dim,
        opts,
        rng,
    )
}

/// As [`maximize_acq`], with the candidate block scored by `batch`, which
/// must agree with `acq` up to rounding.
pub fn maximize_acq_batched<F, B>(acq: F, batch: B, dim: usize, opts: &MaximizeOptions, rng: &mut Rng) -> Maximum
where
    F: Fn(&[f64]) -> f64,
    B: Fn(&[Vec<f64>]) -> Vec<f64>,
{
    let candidates = sample_unit(dim, opts.n_candidates.max(1), rng);
    let values: Vec<f64> = batch(&candidates).into_iter().map(score).collect();
    let starts = top_k(&values, opts.n_starts.max(1));

    let mut best = Maximum {
        x: candidates[starts[0]].clone(),
        value: values[starts[0]],
    };
    if opts.max_evals > dim + 1 {
        for &i in &starts {
            let local = nelder_mead_box(&acq, &candidates[i], opts.initial_step, opts.max_evals);
            if local.value > best.value {
                best = local;
            }
        }
    }
    best
}
