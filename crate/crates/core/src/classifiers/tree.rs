//! Unpruned binary classification tree grown on information gain.

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Node {
    Leaf {
        probabilities: Vec<f64>,
    },
    /// Cases with `x[feature] <= threshold` go to `left`.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTreeModel {
    nodes: Vec<Node>,
    n_features: usize,
    n_classes: usize,
}

impl DecisionTreeModel {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    /// Length of the longest root-to-leaf path, in splits.
    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], i: usize) -> usize {
            match &nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }

    /// Leaf distribution reached by `row`.
    pub fn leaf_probabilities(&self, row: &[f64]) -> &[f64] {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { probabilities } => return probabilities,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if row[*feature] <= *threshold { *left } else { *right },
            }
        }
    }

    pub fn predict_proba(&self, x: &Matrix) -> Result<Vec<Vec<f64>>> {
        if x.cols() != self.n_features {
            return Err(Error::ShapeMismatch {
                expected: self.n_features,
                got: x.cols(),
            });
        }
        Ok((0..x.rows()).map(|i| self.leaf_probabilities(x.row(i)).to_vec()).collect())
    }
}

fn entropy(counts: &[usize], total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / t;
            -p * libm::log(p)
        })
        .sum()
}

struct Candidate {
    feature: usize,
    threshold: f64,
    gain: f64,
}

fn best_split(x: &Matrix, y: &[usize], idx: &[usize], n_classes: usize, parent: f64) -> Option<Candidate> {
    let n = idx.len();
    let mut best: Option<Candidate> = None;
    let mut pairs: Vec<(f64, usize)> = Vec::with_capacity(n);
    let mut total = vec![0usize; n_classes];
    for &i in idx {
        total[y[i]] += 1;
    }
    let mut left = vec![0usize; n_classes];
    let mut right = vec![0usize; n_classes];
    for f in 0..x.cols() {
        pairs.clear();
        pairs.extend(idx.iter().map(|&i| (x[(i, f)], y[i])));
        pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        if pairs[0].0 == pairs[n - 1].0 {
            continue;
        }
        left.iter_mut().for_each(|c| *c = 0);
        right.copy_from_slice(&total);
        for j in 0..n - 1 {
            let (v, label) = pairs[j];
            left[label] += 1;
            right[label] -= 1;
            let next = pairs[j + 1].0;
            if v == next {
                continue;
            }
            let nl = j + 1;
            let nr = n - nl;
            let gain = parent
                - (nl as f64 / n as f64) * entropy(&left, nl)
                - (nr as f64 / n as f64) * entropy(&right, nr);
            if best.as_ref().is_none_or(|b| gain > b.gain) {
                let mut threshold = v + (next - v) / 2.0;
                if !(threshold < next) {
                    threshold = v;
                }
                best = Some(Candidate {
                    feature: f,
                    threshold,
                    gain,
                });
            }
        }
    }
    best
}

/// Grows a tree on `x` (one row per case) and class indices `y < n_classes`.
///
/// Candidate thresholds are midpoints between consecutive distinct values; the
/// highest-gain split wins (first feature, then lowest threshold, on ties).
/// A node becomes a leaf when it is pure, holds fewer than 2 cases, or has no
/// candidate threshold left.
pub fn fit_tree(x: &Matrix, y: &[usize], n_classes: usize) -> Result<DecisionTreeModel> {
    if x.rows() == 0 {
        return Err(Error::EmptyInput);
    }
    if y.len() != x.rows() {
        return Err(Error::ShapeMismatch {
            expected: x.rows(),
            got: y.len(),
        });
    }
    if x.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    if let Some(&bad) = y.iter().find(|&&c| c >= n_classes) {
        return Err(Error::InvalidConfig(alloc::format!(
            "class index {bad} outside 0..{n_classes}"
        )));
    }

    let mut nodes: Vec<Node> = vec![Node::Leaf {
        probabilities: Vec::new(),
    }];
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, (0..x.rows()).collect())];
    while let Some((slot, idx)) = stack.pop() {
        let mut counts = vec![0usize; n_classes];
        for &i in &idx {
            counts[y[i]] += 1;
        }
        let n = idx.len();
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let split = if pure || n < 2 {
            None
        } else {
            best_split(x, y, &idx, n_classes, entropy(&counts, n))
        };
        match split {
            None => {
                nodes[slot] = Node::Leaf {
                    probabilities: counts.iter().map(|&c| c as f64 / n as f64).collect(),
                };
            }
            Some(c) => {
                let (l, r): (Vec<usize>, Vec<usize>) =
                    idx.iter().partition(|&&i| x[(i, c.feature)] <= c.threshold);
                let left = nodes.len();
                let right = left + 1;
                nodes.push(Node::Leaf {
                    probabilities: Vec::new(),
                });
                nodes.push(Node::Leaf {
                    probabilities: Vec::new(),
                });
                nodes[slot] = Node::Split {
                    feature: c.feature,
                    threshold: c.threshold,
                    left,
                    right,
                };
                stack.push((right, r));
                stack.push((left, l));
            }
        }
    }
    Ok(DecisionTreeModel {
        nodes,
        n_features: x.cols(),
        n_classes,
    })
}
