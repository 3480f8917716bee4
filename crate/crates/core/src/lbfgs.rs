//! Box-constrained limited-memory quasi-Newton minimizer.
//!
//! A projected L-BFGS: the two-loop recursion runs on the free variables,
//! steps are projected back onto the box and accepted under an Armijo
//! condition measured along the projected step. Used for the GP
//! hyperparameters, which live in a 3-dimensional log box.

#[derive(Debug, Clone, Copy)]
pub struct LbfgsOptions {
    pub max_iter: usize,
    pub memory: usize,
    /// Stop when the projected gradient's max-norm drops below this.
    pub gtol: f64,
    /// Stop when the relative decrease of `f` drops below this.
    pub ftol: f64,
}

impl Default for LbfgsOptions {
    fn default() -> Self {
        Self {
            max_iter: 60,
            memory: 6,
            gtol: 1e-6,
            ftol: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LbfgsResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

fn project(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((v, &lo), &hi) in x.iter_mut().zip(lower).zip(upper) {
        *v = v.clamp(lo, hi);
    }
}

fn projected_gradient(x: &[f64], g: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(g)
        .zip(lower.iter().zip(upper))
        .map(|((&xi, &gi), (&lo, &hi))| {
            if (xi <= lo && gi > 0.0) || (xi >= hi && gi < 0.0) {
                0.0
            } else {
                gi
            }
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimizes `fg` (returning value and gradient) over the box `[lower, upper]`.
/// `fg` may return a non-finite value to reject a point; the line search then
/// backtracks.
pub fn minimize<F>(mut fg: F, x0: &[f64], lower: &[f64], upper: &[f64], opts: LbfgsOptions) -> LbfgsResult
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let n = x0.len();
    let mut x = x0.to_vec();
    project(&mut x, lower, upper);
    let (mut f, mut g) = fg(&x);
    let mut evaluations = 1;
    if !f.is_finite() {
        return LbfgsResult {
            x,
            f,
            iterations: 0,
            evaluations,
        };
    }

    let mut s_hist: Vec<Vec<f64>> = Vec::with_capacity(opts.memory);
    let mut y_hist: Vec<Vec<f64>> = Vec::with_capacity(opts.memory);
    let mut iterations = 0;

    while iterations < opts.max_iter {
        iterations += 1;
        let pg = projected_gradient(&x, &g, lower, upper);
        if pg.iter().fold(0.0f64, |m, v| m.max(v.abs())) < opts.gtol {
            break;
        }
        let free: Vec<bool> = pg.iter().map(|v| *v != 0.0).collect();

        // Two-loop recursion restricted to the free coordinates.
        let mut q: Vec<f64> = pg.clone();
        let k = s_hist.len();
        let mut alphas = vec![0.0; k];
        for i in (0..k).rev() {
            let rho = 1.0 / dot(&s_hist[i], &y_hist[i]);
            alphas[i] = rho * dot(&s_hist[i], &q);
            for j in 0..n {
                if free[j] {
                    q[j] -= alphas[i] * y_hist[i][j];
                }
            }
        }
        if k > 0 {
            let gamma = dot(&s_hist[k - 1], &y_hist[k - 1]) / dot(&y_hist[k - 1], &y_hist[k - 1]);
            q.iter_mut().for_each(|v| *v *= gamma);
        }
        for i in 0..k {
            let rho = 1.0 / dot(&s_hist[i], &y_hist[i]);
            let beta = rho * dot(&y_hist[i], &q);
            for j in 0..n {
                if free[j] {
                    q[j] += (alphas[i] - beta) * s_hist[i][j];
                }
            }
        }
        let mut dir: Vec<f64> = q.iter().zip(&free).map(|(v, &fr)| if fr { -v } else { 0.0 }).collect();
        if dot(&dir, &g) >= 0.0 {
            dir = pg.iter().map(|v| -v).collect();
            s_hist.clear();
            y_hist.clear();
        }
        if s_hist.is_empty() {
            // No curvature yet: cap the first trial step at unit length.
            let len = dir.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if len > 1.0 {
                dir.iter_mut().for_each(|v| *v /= len);
            }
        }

        // Backtracking along the projected path.
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let mut trial: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + step * d).collect();
            project(&mut trial, lower, upper);
            let moved: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
            if moved.iter().all(|v| *v == 0.0) {
                break;
            }
            let (ft, gt) = fg(&trial);
            evaluations += 1;
            if ft.is_finite() && ft <= f + 1e-4 * dot(&g, &moved) {
                accepted = Some((trial, ft, gt, moved));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fnew, gnew, s)) = accepted else {
            break;
        };
        let yv: Vec<f64> = gnew.iter().zip(&g).map(|(a, b)| a - b).collect();
        if dot(&s, &yv) > f64::EPSILON * dot(&yv, &yv) {
            if s_hist.len() == opts.memory {
                s_hist.remove(0);
                y_hist.remove(0);
            }
            s_hist.push(s);
            y_hist.push(yv);
        }
        let decrease = f - fnew;
        x = xn;
        f = fnew;
        g = gnew;
        if decrease <= opts.ftol * f.abs().max(1.0) {
            break;
        }
    }

    LbfgsResult {
        x,
        f,
        iterations,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> (f64, Vec<f64>) {
        let (a, b) = (x[0], x[1]);
        let f = (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2);
        let g = vec![-2.0 * (1.0 - a) - 400.0 * a * (b - a * a), 200.0 * (b - a * a)];
        (f, g)
    }

    #[test]
    fn unconstrained_rosenbrock() {
        let opts = LbfgsOptions {
            max_iter: 500,
            ftol: 0.0,
            gtol: 1e-8,
            ..Default::default()
        };
        let r = minimize(rosenbrock, &[-1.2, 1.0], &[-5.0, -5.0], &[5.0, 5.0], opts);
        assert!((r.x[0] - 1.0).abs() < 1e-5 && (r.x[1] - 1.0).abs() < 1e-5, "{:?}", r);
    }

    #[test]
    fn active_bound() {
        // minimum of (x-3)^2 + (y+1)^2 on [0,2]x[0,2] is (2,0)
        let f = |x: &[f64]| {
            (
                (x[0] - 3.0).powi(2) + (x[1] + 1.0).powi(2),
                vec![2.0 * (x[0] - 3.0), 2.0 * (x[1] + 1.0)],
            )
        };
        let r = minimize(f, &[1.0, 1.0], &[0.0, 0.0], &[2.0, 2.0], LbfgsOptions::default());
        assert!((r.x[0] - 2.0).abs() < 1e-12 && r.x[1].abs() < 1e-12, "{:?}", r);
    }
}
