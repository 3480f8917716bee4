//! Shared fixtures for the criterion benches.

use dkibo::space::sample_unit;
use dkibo::Rng;

/// `n` points in `[0, 1]^d` with a smooth, mildly noisy response.
pub fn fixture(n: usize, d: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut rng = Rng::new(seed);
    let x = sample_unit(d, n, &mut rng);
    let y = x
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .map(|(k, a)| ((k + 3) as f64 * a).sin())
                .sum::<f64>()
                + 0.01 * rng.uniform()
        })
        .collect();
    (x, y)
}
