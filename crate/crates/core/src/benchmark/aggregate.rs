use serde::{Deserialize, Serialize};

/// Linear-interpolated percentile, `q` in `[0, 100]`. Input need not be sorted.
pub fn percentile(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty(), "percentile of empty slice");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    sorted_percentile(&v, q)
}

fn sorted_percentile(v: &[f64], q: f64) -> f64 {
    let pos = (q / 100.0).clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    if lo == hi {
        v[lo]
    } else {
        v[lo] + (v[hi] - v[lo]) * frac
    }
}

/// Summary statistics over trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    pub mean: f64,
    /// Population standard deviation.
    pub std_dev: f64,
}

/// Computes [`Summary`]. The result does not depend on input order.
pub fn summarize(values: &[f64]) -> Summary {
    assert!(!values.is_empty(), "summary of empty slice");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let mean = v.iter().sum::<f64>() / n as f64;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
    Summary {
        n,
        median: sorted_percentile(&v, 50.0),
        q25: sorted_percentile(&v, 25.0),
        q75: sorted_percentile(&v, 75.0),
        mean,
        std_dev: var.sqrt(),
    }
}

/// Median and interquartile band at one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationBand {
    pub iteration: usize,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
}

/// Per-iteration bands and final summaries for a set of trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub simple: Vec<IterationBand>,
    pub cumulative_mean: Vec<IterationBand>,
    pub final_simple: Summary,
    pub final_cmr: Summary,
}

fn bands(series: &[&[f64]]) -> Vec<IterationBand> {
    let len = series.iter().map(|s| s.len()).min().unwrap_or(0);
    (0..len)
        .map(|t| {
            let col: Vec<f64> = series.iter().map(|s| s[t]).collect();
            let s = summarize(&col);
            IterationBand {
                iteration: t,
                median: s.median,
                q25: s.q25,
                q75: s.q75,
            }
        })
        .collect()
}

/// Aggregates regret series across trials. Series are truncated to the shortest.
pub fn aggregate(trials: &[super::RegretSeries]) -> Aggregate {
    assert!(!trials.is_empty(), "no trials");
    let simple: Vec<&[f64]> = trials.iter().map(|t| t.simple.as_slice()).collect();
    let cmr: Vec<&[f64]> = trials.iter().map(|t| t.cumulative_mean.as_slice()).collect();
    let finals: Vec<f64> = trials.iter().map(|t| t.final_simple()).collect();
    let final_cmr: Vec<f64> = trials.iter().map(|t| t.final_cmr()).collect();
    Aggregate {
        simple: bands(&simple),
        cumulative_mean: bands(&cmr),
        final_simple: summarize(&finals),
        final_cmr: summarize(&final_cmr),
    }
}

/// Distribution of the iteration at which augmentation was switched off.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DropStats {
    pub trials: usize,
    pub never_dropped: usize,
    pub median: Option<f64>,
    pub q25: Option<f64>,
    pub q75: Option<f64>,
    /// Values beyond 1.5 IQR of the quartiles, sorted.
    pub outliers: Vec<usize>,
}

impl DropStats {
    pub fn from_iterations(drops: &[Option<usize>]) -> Self {
        let mut v: Vec<usize> = drops.iter().flatten().copied().collect();
        v.sort_unstable();
        let never_dropped = drops.len() - v.len();
        if v.is_empty() {
            return Self {
                trials: drops.len(),
                never_dropped,
                median: None,
                q25: None,
                q75: None,
                outliers: Vec::new(),
            };
        }
        let f: Vec<f64> = v.iter().map(|&d| d as f64).collect();
        let (q25, med, q75) = (
            sorted_percentile(&f, 25.0),
            sorted_percentile(&f, 50.0),
            sorted_percentile(&f, 75.0),
        );
        let iqr = q75 - q25;
        let outliers = v
            .iter()
            .copied()
            .filter(|&d| (d as f64) < q25 - 1.5 * iqr || (d as f64) > q75 + 1.5 * iqr)
            .collect();
        Self {
            trials: drops.len(),
            never_dropped,
            median: Some(med),
            q25: Some(q25),
            q75: Some(q75),
            outliers,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::{CmrMode, RegretSeries};
    use proptest::prelude::*;

    #[test]
    fn percentile_matches_linear_interpolation() {
        // numpy.percentile([1, 2, 3, 4], [25, 50, 75]) -> 1.75, 2.5, 3.25
        let v = [4.0, 1.0, 3.0, 2.0];
        assert_eq!(percentile(&v, 25.0), 1.75);
        assert_eq!(percentile(&v, 50.0), 2.5);
        assert_eq!(percentile(&v, 75.0), 3.25);
        assert_eq!(percentile(&[7.0], 90.0), 7.0);
    }

    #[test]
    fn summary_population_std() {
        let s = summarize(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!(s.mean, 5.0);
        assert_eq!(s.std_dev, 2.0);
        assert_eq!(s.median, 4.5);
    }

    #[test]
    fn drop_stats() {
        let d = DropStats::from_iterations(&[Some(10), Some(11), Some(12), Some(13), Some(80), None]);
        assert_eq!(d.never_dropped, 1);
        assert_eq!(d.median, Some(12.0));
        assert_eq!(d.outliers, vec![80]);
        let none = DropStats::from_iterations(&[None, None]);
        assert_eq!(none.never_dropped, 2);
        assert!(none.median.is_none());
    }

    #[test]
    fn aggregate_bands() {
        let a = RegretSeries::from_regrets(&[3.0, 1.0], 0, CmrMode::Instantaneous);
        let b = RegretSeries::from_regrets(&[1.0, 2.0, 0.0], 1, CmrMode::Instantaneous);
        let agg = aggregate(&[a, b]);
        assert_eq!(agg.simple.len(), 2);
        assert_eq!(agg.simple[0].median, 2.0);
        assert_eq!(agg.final_simple.median, 0.5);
    }

    proptest! {
        #[test]
        fn summary_is_order_invariant(v in prop::collection::vec(-1e3f64..1e3, 1..40), seed in any::<u64>()) {
            let mut w = v.clone();
            let mut rng = crate::space::Rng::new(seed);
            for i in (1..w.len()).rev() {
                let j = rng.below(i + 1);
                w.swap(i, j);
            }
            prop_assert_eq!(summarize(&v), summarize(&w));
        }
    }
}
