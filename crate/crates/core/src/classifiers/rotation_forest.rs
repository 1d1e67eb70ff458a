//! Rotation forest: each tree is trained on the data rotated by a
//! block-diagonal matrix of per-feature-group principal axes, where each group's
//! axes come from a random class subset and a random half of its cases.

use alloc::vec;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::tree::{fit_tree, DecisionTreeModel};
use crate::exec::Executor;
use crate::features::pca::{center, principal_axes};
use crate::linalg::{self, Matrix};
use crate::rng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationForestConfig {
    pub n_trees: usize,
    pub group_size: usize,
    /// Share of the selected classes' cases used to fit each group's axes.
    pub sample_fraction: f64,
}

impl Default for RotationForestConfig {
    fn default() -> Self {
        Self {
            n_trees: 200,
            group_size: 3,
            sample_fraction: 0.5,
        }
    }
}

/// One diagonal block: the input features it reads and its `g × g`
/// orthonormal loadings (inputs as rows, outputs as columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationGroup {
    pub features: Vec<usize>,
    pub loadings: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationMember {
    pub groups: Vec<RotationGroup>,
    pub tree: DecisionTreeModel,
}

impl RotationMember {
    /// Width of the rotated space.
    pub fn rotated_width(&self) -> usize {
        self.groups.iter().map(|g| g.features.len()).sum()
    }

    pub fn rotate_row(&self, row: &[f64], out: &mut Vec<f64>) {
        rotate_row(&self.groups, row, out);
    }

    pub fn rotate(&self, x: &Matrix) -> Matrix {
        rotate(&self.groups, x)
    }

    /// Dense rotation over the kept features, indexed by position in `kept`.
    /// Rows are inputs, columns are rotated outputs.
    pub fn rotation_matrix(&self, kept: &[usize]) -> Matrix {
        let p = kept.len();
        let mut r = Matrix::zeros(p, p);
        let mut col = 0;
        for g in &self.groups {
            for c in 0..g.features.len() {
                for (j, f) in g.features.iter().enumerate() {
                    let row = kept.iter().position(|k| k == f).expect("group feature is kept");
                    r[(row, col)] = g.loadings[(j, c)];
                }
                col += 1;
            }
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationForestModel {
    members: Vec<RotationMember>,
    /// Input features with non-zero training variance.
    kept: Vec<usize>,
    n_features: usize,
    n_classes: usize,
}

impl RotationForestModel {
    /// Assembles a forest from members fitted with [`fit_member`].
    pub fn from_members(members: Vec<RotationMember>, kept: Vec<usize>, n_features: usize, n_classes: usize) -> Self {
        Self {
            members,
            kept,
            n_features,
            n_classes,
        }
    }

    pub fn members(&self) -> &[RotationMember] {
        &self.members
    }

    pub fn kept_features(&self) -> &[usize] {
        &self.kept
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }
}

fn rotate_row(groups: &[RotationGroup], row: &[f64], out: &mut Vec<f64>) {
    out.clear();
    for g in groups {
        for c in 0..g.features.len() {
            let mut acc = 0.0;
            for (j, &f) in g.features.iter().enumerate() {
                acc += row[f] * g.loadings[(j, c)];
            }
            out.push(acc);
        }
    }
}

fn rotate(groups: &[RotationGroup], x: &Matrix) -> Matrix {
    let width = groups.iter().map(|g| g.features.len()).sum();
    let mut out = Matrix::zeros(x.rows(), width);
    let mut buf = Vec::with_capacity(width);
    for i in 0..x.rows() {
        rotate_row(groups, x.row(i), &mut buf);
        out.row_mut(i).copy_from_slice(&buf);
    }
    out
}

/// Indices of columns whose values are not all equal.
pub fn varying_features(x: &Matrix) -> Vec<usize> {
    (0..x.cols())
        .filter(|&j| {
            let first = x[(0, j)];
            (1..x.rows()).any(|i| x[(i, j)] != first)
        })
        .collect()
}

fn check_input(x: &Matrix, y: &[usize], n_classes: usize) -> Result<()> {
    if x.rows() < 2 {
        return Err(Error::InsufficientData { needed: 2, got: x.rows() });
    }
    if x.cols() == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    if y.len() != x.rows() {
        return Err(Error::ShapeMismatch {
            expected: x.rows(),
            got: y.len(),
        });
    }
    if y.iter().any(|&c| c >= n_classes) {
        return Err(Error::InvalidConfig("class index out of range".into()));
    }
    if x.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    Ok(())
}

/// Fits forest member `tree_index`, drawing all randomness from the child
/// stream `(seed, tree_index)`.
pub fn fit_member(
    x: &Matrix,
    y: &[usize],
    n_classes: usize,
    kept: &[usize],
    config: &RotationForestConfig,
    seed: u64,
    tree_index: usize,
) -> Result<RotationMember> {
    let mut rng = rng::stream(seed, tree_index as u64);
    let mut features = kept.to_vec();
    features.shuffle(&mut rng);

    let mut present: Vec<usize> = y.to_vec();
    present.sort_unstable();
    present.dedup();

    let group_size = config.group_size.max(1);
    let mut groups = Vec::with_capacity(features.len().div_ceil(group_size));
    for chunk in features.chunks(group_size) {
        let chosen = loop {
            let mask: Vec<bool> = present.iter().map(|_| rng.gen_bool(0.5)).collect();
            if mask.iter().any(|&b| b) {
                break mask;
            }
        };
        let mut candidates: Vec<usize> = (0..x.rows())
            .filter(|&i| {
                let pos = present.binary_search(&y[i]).expect("label present");
                chosen[pos]
            })
            .collect();
        let take = libm::ceil(candidates.len() as f64 * config.sample_fraction) as usize;
        let take = take.min(candidates.len());
        let mut rows = candidates.partial_shuffle(&mut rng, take).0.to_vec();
        if rows.len() < 3 {
            rows = (0..x.rows()).collect();
        }
        groups.push(RotationGroup {
            features: chunk.to_vec(),
            loadings: group_axes(x, &rows, chunk),
        });
    }

    let tree = fit_tree(&rotate(&groups, x), y, n_classes)?;
    Ok(RotationMember { groups, tree })
}

/// Principal axes of `x[rows, features]`; identity when fewer than two rows.
fn group_axes(x: &Matrix, rows: &[usize], features: &[usize]) -> Matrix {
    let g = features.len();
    if rows.len() < 2 {
        return Matrix::identity(g);
    }
    let mut sub = Matrix::zeros(rows.len(), g);
    for (r, &i) in rows.iter().enumerate() {
        for (c, &f) in features.iter().enumerate() {
            sub[(r, c)] = x[(i, f)];
        }
    }
    let (_, centered) = center(&sub);
    let (_, mut axes) = principal_axes(&centered);
    if axes.as_slice().iter().any(|v| !v.is_finite()) {
        return Matrix::identity(g);
    }
    linalg::canonicalize_signs(&mut axes);
    axes
}

/// Fits a rotation forest on `x` (one row per case) and class indices `y`.
pub fn fit_rotation_forest<E: Executor>(
    x: &Matrix,
    y: &[usize],
    n_classes: usize,
    config: &RotationForestConfig,
    seed: u64,
    exec: &E,
) -> Result<RotationForestModel> {
    check_input(x, y, n_classes)?;
    if config.n_trees == 0 {
        return Err(Error::InvalidConfig("rotation forest needs at least one tree".into()));
    }
    let kept = varying_features(x);
    let members = exec
        .map(config.n_trees, |t| fit_member(x, y, n_classes, &kept, config, seed, t))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(RotationForestModel::from_members(members, kept, x.cols(), n_classes))
}

/// Mean leaf distribution over all members, one row per case.
pub fn predict_forest(model: &RotationForestModel, x: &Matrix) -> Result<Vec<Vec<f64>>> {
    if x.cols() != model.n_features {
        return Err(Error::ShapeMismatch {
            expected: model.n_features,
            got: x.cols(),
        });
    }
    let trees = model.members.len() as f64;
    let mut buf = Vec::new();
    let mut out = Vec::with_capacity(x.rows());
    for i in 0..x.rows() {
        let mut acc = vec![0.0; model.n_classes];
        for m in &model.members {
            m.rotate_row(x.row(i), &mut buf);
            for (a, p) in acc.iter_mut().zip(m.tree.leaf_probabilities(&buf)) {
                *a += p;
            }
        }
        for a in acc.iter_mut() {
            *a /= trees;
        }
        out.push(acc);
    }
    Ok(out)
}
