//! Ten-component mixture response with a dominant linear trend.
//!
//! `f(x) = 2.5 · (wᵀx) · plateau(x) + 0.15 · Σ_j u_j cos(2π x_j)` on `[0, 1]^10`
//! with `plateau(x) = 1 / (1 + 0.5 · max(0, Σ_j x_j − 6))`.
//!
//! The plateau caps the useful total loading at 6: seven components have
//! positive weight, but filling all seven costs more than it gains, so the
//! maximizer is the corner holding the six largest weights. A linear fit over
//! the box explains most of the variance yet points at the seven-component
//! corner. The cosine ripple has zero gradient at every corner.

pub const WEIGHTS: [f64; 10] = [0.9, -1.2, 3.0, 1.0, 2.2, -0.5, 1.5, 2.6, -2.0, 1.2];
pub const RIPPLE_SIGNS: [f64; 10] = [1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0];
pub const SCALE: f64 = 2.5;
pub const BUDGET: f64 = 6.0;
pub const PENALTY: f64 = 0.5;
pub const RIPPLE: f64 = 0.15;

/// Maximizer: the six largest weights switched fully on.
pub const ARGMAX: [f64; 10] = [0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
/// `2.5 · 11.5 + 0.15 · 2`; confirmed by random sampling plus Nelder–Mead polishing.
pub const MAX_VALUE: f64 = 29.05;

pub fn mixture_demo(x: &[f64]) -> f64 {
    let load: f64 = x.iter().sum();
    let plateau = 1.0 / (1.0 + PENALTY * (load - BUDGET).max(0.0));
    let trend: f64 = WEIGHTS.iter().zip(x).map(|(w, v)| w * v).sum();
    let ripple: f64 = RIPPLE_SIGNS
        .iter()
        .zip(x)
        .map(|(u, v)| u * (2.0 * std::f64::consts::PI * v).cos())
        .sum();
    SCALE * trend * plateau + RIPPLE * ripple
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximize::nelder_mead_box;
    use crate::models::fit_linear;
    use crate::space::{sample_unit, Rng};

    #[test]
    fn documented_values() {
        assert!((mixture_demo(&ARGMAX) - MAX_VALUE).abs() < 1e-12);
        assert!((mixture_demo(&[0.0; 10]) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn argmax_oracle() {
        // Dense random sampling plus local polishing never beats the corner.
        let mut rng = Rng::new(2024);
        let pts = sample_unit(10, 100_000, &mut rng);
        let mut vals: Vec<(f64, usize)> = pts.iter().enumerate().map(|(i, p)| (mixture_demo(p), i)).collect();
        vals.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut best = f64::NEG_INFINITY;
        for &(_, i) in vals.iter().take(20) {
            let mut start = pts[i].clone();
            for _ in 0..5 {
                let m = nelder_mead_box(&mixture_demo, &start, 0.1, 4000);
                start = m.x;
                best = best.max(m.value);
            }
        }
        assert!(best <= MAX_VALUE + 1e-9, "found {best}");
        assert!(best > MAX_VALUE - 1.0, "oracle too weak: {best}");
    }

    #[test]
    fn mostly_linear() {
        let x = sample_unit(10, 200, &mut Rng::new(0));
        let y: Vec<f64> = x.iter().map(|p| mixture_demo(p)).collect();
        let fit = fit_linear(&x, &y);
        let mean = y.iter().sum::<f64>() / y.len() as f64;
        let ss_tot: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
        let ss_res: f64 = x.iter().zip(&y).map(|(p, v)| (v - fit.predict(p)).powi(2)).sum();
        let r2 = 1.0 - ss_res / ss_tot;
        assert!(r2 >= 0.9, "R² = {r2}");
    }
}
