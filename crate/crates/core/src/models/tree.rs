//! Greedy least-squares CART regression tree.

use super::stable_mean;
use crate::space::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeParams {
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub max_features: Option<usize>,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self {
            max_depth: 5,
            min_samples_leaf: 1,
            max_features: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    /// Rows with `x[dim] <= threshold` go left.
    Split {
        dim: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
        samples: usize,
    },
}

/// Nodes stored in an arena; index 0 is the root.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    nodes: Vec<TreeNode>,
}

impl Tree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                TreeNode::Split {
                    dim,
                    threshold,
                    left,
                    right,
                } => i = if x[dim] <= threshold { left } else { right },
                TreeNode::Leaf { value, .. } => return value,
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn go(t: &Tree, i: usize) -> usize {
            match t.nodes[i] {
                TreeNode::Split { left, right, .. } => 1 + go(t, left).max(go(t, right)),
                TreeNode::Leaf { .. } => 0,
            }
        }
        go(self, 0)
    }
}

/// Best split found for one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub dim: usize,
    pub threshold: f64,
    /// Summed squared error of the two children about their own means.
    pub sse: f64,
}

/// Exhaustive best split over the rows `idx`, or `None` if no split leaves
/// `min_leaf` rows on both sides. Ties go to the lower dimension, then the
/// lower threshold.
pub(crate) fn best_split(x: &[Vec<f64>], y: &[f64], idx: &[usize], dims: &[usize], min_leaf: usize) -> Option<Split> {
    let n = idx.len();
    if n < 2 * min_leaf || n < 2 {
        return None;
    }
    // Centre targets to keep the running sums well conditioned.
    let centre = y[idx[0]];
    let total: f64 = idx.iter().map(|&i| y[i] - centre).sum();
    let total_sq: f64 = idx.iter().map(|&i| (y[i] - centre).powi(2)).sum();
    let scale = 1.0 + total_sq;

    let mut best: Option<Split> = None;
    let mut order = idx.to_vec();
    for &dim in dims {
        order.sort_by(|&a, &b| x[a][dim].total_cmp(&x[b][dim]).then(a.cmp(&b)));
        let (mut s_left, mut sq_left) = (0.0, 0.0);
        for k in 0..n - 1 {
            let v = y[order[k]] - centre;
            s_left += v;
            sq_left += v * v;
            let n_left = k + 1;
            let n_right = n - n_left;
            let lo = x[order[k]][dim];
            let hi = x[order[k + 1]][dim];
            if lo == hi || n_left < min_leaf || n_right < min_leaf {
                continue;
            }
            let s_right = total - s_left;
            let sq_right = total_sq - sq_left;
            let sse = (sq_left - s_left * s_left / n_left as f64).max(0.0)
                + (sq_right - s_right * s_right / n_right as f64).max(0.0);
            let better = match best {
                None => true,
                Some(b) => sse < b.sse - 1e-12 * scale,
            };
            if better {
                let mut threshold = 0.5 * (lo + hi);
                if threshold >= hi {
                    threshold = lo;
                }
                best = Some(Split { dim, threshold, sse });
            }
        }
    }
    best
}

/// Grows a tree greedily. With `max_features = Some(m)` each node considers a
/// random subset of `m` dimensions drawn from `rng`; without an rng all
/// dimensions are used.
pub fn fit_tree(x: &[Vec<f64>], y: &[f64], params: TreeParams, rng: Option<&mut Rng>) -> Tree {
    let idx: Vec<usize> = (0..y.len()).collect();
    fit_tree_on(x, y, &idx, params, rng)
}

pub(crate) fn fit_tree_on(
    x: &[Vec<f64>],
    y: &[f64],
    idx: &[usize],
    params: TreeParams,
    mut rng: Option<&mut Rng>,
) -> Tree {
    assert!(!idx.is_empty(), "cannot fit a tree on zero rows");
    let dim = x[idx[0]].len();
    let mut nodes = Vec::new();
    // Explicit stack of (node slot, rows, depth).
    let mut stack = vec![(0usize, idx.to_vec(), 0usize)];
    nodes.push(TreeNode::Leaf { value: 0.0, samples: 0 });
    while let Some((slot, rows, depth)) = stack.pop() {
        let value = stable_mean(rows.iter().map(|&i| y[i]));
        let leaf = TreeNode::Leaf {
            value,
            samples: rows.len(),
        };
        let pure = rows.iter().all(|&i| y[i] == y[rows[0]]);
        if depth >= params.max_depth || pure {
            nodes[slot] = leaf;
            continue;
        }
        let dims: Vec<usize> = match (params.max_features, rng.as_deref_mut()) {
            (Some(m), Some(r)) if m < dim => {
                let mut all: Vec<usize> = (0..dim).collect();
                for i in 0..m {
                    let j = i + r.below(dim - i);
                    all.swap(i, j);
                }
                let mut chosen = all[..m.max(1)].to_vec();
                chosen.sort_unstable();
                chosen
            }
            _ => (0..dim).collect(),
        };
        match best_split(x, y, &rows, &dims, params.min_samples_leaf) {
            None => nodes[slot] = leaf,
            Some(split) => {
                let (left_rows, right_rows): (Vec<usize>, Vec<usize>) =
                    rows.iter().partition(|&&i| x[i][split.dim] <= split.threshold);
                let left = nodes.len();
                let right = left + 1;
                nodes.push(TreeNode::Leaf { value: 0.0, samples: 0 });
                nodes.push(TreeNode::Leaf { value: 0.0, samples: 0 });
                nodes[slot] = TreeNode::Split {
                    dim: split.dim,
                    threshold: split.threshold,
                    left,
                    right,
                };
                stack.push((right, right_rows, depth + 1));
                stack.push((left, left_rows, depth + 1));
            }
        }
    }
    Tree { nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Rng;
    use proptest::prelude::*;

    /// Direct SSE of a partition, no running sums.
    fn sse_of(vals: &[f64]) -> f64 {
        let m = vals.iter().sum::<f64>() / vals.len() as f64;
        vals.iter().map(|v| (v - m).powi(2)).sum()
    }

    /// Every (dim, midpoint) pair evaluated from scratch.
    fn brute_force(x: &[Vec<f64>], y: &[f64], min_leaf: usize) -> Option<f64> {
        let d = x[0].len();
        let mut best: Option<f64> = None;
        for dim in 0..d {
            let mut vals: Vec<f64> = x.iter().map(|r| r[dim]).collect();
            vals.sort_by(f64::total_cmp);
            vals.dedup();
            for w in vals.windows(2) {
                let t = 0.5 * (w[0] + w[1]);
                let (l, r): (Vec<usize>, Vec<usize>) = (0..y.len()).partition(|&i| x[i][dim] <= t);
                if l.len() < min_leaf || r.len() < min_leaf {
                    continue;
                }
                let s = sse_of(&l.iter().map(|&i| y[i]).collect::<Vec<_>>())
                    + sse_of(&r.iter().map(|&i| y[i]).collect::<Vec<_>>());
                best = Some(best.map_or(s, |b: f64| b.min(s)));
            }
        }
        best
    }

    #[test]
    fn constant_target_is_single_leaf() {
        let x: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 / 10.0, 0.3]).collect();
        let y = vec![0.7; 10];
        let t = fit_tree(&x, &y, TreeParams::default(), None);
        assert_eq!(t.nodes().len(), 1);
        assert_eq!(t.predict(&[0.55, 0.1]), 0.7);
    }

    #[test]
    fn single_row_is_leaf() {
        let t = fit_tree(&[vec![0.5]], &[2.0], TreeParams::default(), None);
        assert_eq!(t.root(), &TreeNode::Leaf { value: 2.0, samples: 1 });
    }

    #[test]
    fn step_function_depth_one() {
        let x: Vec<Vec<f64>> = [0.0, 1.0, 2.0, 3.0].iter().map(|&v| vec![v]).collect();
        let y = [0.0, 0.0, 10.0, 10.0];
        let t = fit_tree(
            &x,
            &y,
            TreeParams {
                max_depth: 1,
                ..Default::default()
            },
            None,
        );
        match *t.root() {
            TreeNode::Split { dim, threshold, .. } => {
                assert_eq!(dim, 0);
                assert!(threshold > 1.0 && threshold < 2.0);
            }
            _ => panic!("expected split"),
        }
        assert_eq!(t.predict(&[0.5]), 0.0);
        assert_eq!(t.predict(&[2.5]), 10.0);
        assert_eq!(brute_force(&x, &y, 1), Some(0.0));
    }

    #[test]
    fn ties_prefer_lower_dim_then_lower_threshold() {
        // Both dims carry identical information.
        let x: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, i as f64]).collect();
        let y = [1.0, 1.0, 1.0, 5.0, 5.0, 5.0];
        let s = best_split(&x, &y, &(0..6).collect::<Vec<_>>(), &[0, 1], 1).unwrap();
        assert_eq!(s.dim, 0);
        assert_eq!(s.threshold, 2.5);
        // Symmetric target: splits at 0.5 and 4.5 tie; the lower threshold wins.
        let y = [0.0, 3.0, 3.0, 3.0, 3.0, 0.0];
        let s = best_split(&x, &y, &(0..6).collect::<Vec<_>>(), &[0], 1).unwrap();
        assert_eq!(s.threshold, 0.5);
    }

    #[test]
    fn depth_and_leaf_size_respected() {
        let mut rng = Rng::new(5);
        let x: Vec<Vec<f64>> = (0..60).map(|_| vec![rng.uniform(), rng.uniform()]).collect();
        let y: Vec<f64> = x.iter().map(|r| (7.0 * r[0]).sin() + r[1]).collect();
        let p = TreeParams {
            max_depth: 3,
            min_samples_leaf: 4,
            max_features: None,
        };
        let t = fit_tree(&x, &y, p, None);
        assert!(t.depth() <= 3);
        for n in t.nodes() {
            if let TreeNode::Leaf { samples, .. } = n {
                assert!(*samples >= 4);
            }
        }
    }

    fn dataset() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
        (1usize..=5, 2usize..=50).prop_flat_map(|(d, n)| {
            (
                // Coarse grid values force duplicate feature values.
                prop::collection::vec(prop::collection::vec((0u8..8).prop_map(|v| v as f64 / 7.0), d), n),
                prop::collection::vec(-10.0f64..10.0, n),
            )
        })
    }

    proptest! {
        #[test]
        fn split_matches_brute_force((x, y) in dataset(), min_leaf in 1usize..4) {
            let idx: Vec<usize> = (0..y.len()).collect();
            let dims: Vec<usize> = (0..x[0].len()).collect();
            let ours = best_split(&x, &y, &idx, &dims, min_leaf).map(|s| s.sse);
            let oracle = brute_force(&x, &y, min_leaf);
            match (ours, oracle) {
                (None, None) => {}
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{a} vs {b}"),
                other => prop_assert!(false, "mismatch {:?}", other),
            }
        }

        #[test]
        fn predictions_within_target_range((x, y) in dataset(), q in prop::collection::vec(0.0f64..1.0, 5)) {
            let t = fit_tree(&x, &y, TreeParams::default(), None);
            let lo = y.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let q = &q[..x[0].len()];
            let p = t.predict(q);
            prop_assert!(p >= lo && p <= hi);
        }
    }
}
