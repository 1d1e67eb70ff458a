//! One-vs-rest ridge classifier with the regularization strength chosen by
//! closed-form leave-one-out error.
//!
//! Features are standardized with training statistics; the intercept is not
//! penalized. Probabilities are a softmax of the decision values and are not
//! calibrated.

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::features::pca::center;
use crate::linalg::{self, Matrix};
use crate::{Error, Result};

/// The regularization grid, `10^k` for `k = -3..=3`.
pub const RIDGE_ALPHAS: [f64; 7] = [1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3];

/// Thin singular value decomposition of a centered design, with the targets'
/// column means and their projection onto the left singular vectors.
#[derive(Debug, Clone)]
pub struct RidgePath {
    n: usize,
    /// `n × r` left singular vectors.
    u: Matrix,
    /// `q × r` right singular vectors.
    v: Matrix,
    singular: Vec<f64>,
    target_means: Vec<f64>,
    /// Centered targets, `n × C`.
    targets: Matrix,
    /// `Uᵀ · targets`, `r × C`.
    projected: Matrix,
}

impl RidgePath {
    /// Centers `design` (`n × q`) and `targets` (`n × C`) and factors the design.
    pub fn new(design: &Matrix, targets: &Matrix) -> Self {
        let n = design.rows();
        let (_, z) = center(design);
        let (target_means, targets) = center(targets);
        let (u, v, singular) = thin_svd(&z);
        let projected = u.transpose().matmul(&targets);
        Self {
            n,
            u,
            v,
            singular,
            target_means,
            targets,
            projected,
        }
    }

    /// Sum over cases and target columns of squared leave-one-out residuals,
    /// from the hat-matrix identity `e_i / (1 - H_ii)`.
    pub fn loo_squared_error(&self, alpha: f64) -> f64 {
        let shrink: Vec<f64> = self.singular.iter().map(|s| s * s / (s * s + alpha)).collect();
        let c = self.targets.cols();
        let mut total = 0.0;
        for i in 0..self.n {
            let ui = self.u.row(i);
            let h = 1.0 / self.n as f64 + ui.iter().zip(&shrink).map(|(u, f)| u * u * f).sum::<f64>();
            for col in 0..c {
                let fitted: f64 = ui
                    .iter()
                    .zip(&shrink)
                    .enumerate()
                    .map(|(k, (u, f))| u * f * self.projected[(k, col)])
                    .sum();
                let e = (self.targets[(i, col)] - fitted) / (1.0 - h);
                total += e * e;
            }
        }
        total
    }

    /// `q × C` coefficients on the centered design.
    pub fn coefficients(&self, alpha: f64) -> Matrix {
        let r = self.singular.len();
        let c = self.targets.cols();
        let mut scaled = Matrix::zeros(r, c);
        for k in 0..r {
            let s = self.singular[k];
            let f = s / (s * s + alpha);
            for col in 0..c {
                scaled[(k, col)] = f * self.projected[(k, col)];
            }
        }
        self.v.matmul(&scaled)
    }

    pub fn target_means(&self) -> &[f64] {
        &self.target_means
    }
}

/// Thin SVD through the smaller Gram matrix. Directions with negligible
/// singular value are dropped.
fn thin_svd(z: &Matrix) -> (Matrix, Matrix, Vec<f64>) {
    let (n, q) = (z.rows(), z.cols());
    let wide = q > n;
    let gram = if wide { z.outer_gram() } else { z.gram() };
    let eig = linalg::symmetric_eigen(&gram);
    let top = eig.values.first().copied().unwrap_or(0.0).max(0.0);
    let keep: Vec<usize> = (0..eig.values.len())
        .filter(|&k| eig.values[k] > top * 1e-12 && eig.values[k] > 0.0)
        .collect();
    let r = keep.len();
    let singular: Vec<f64> = keep.iter().map(|&k| libm::sqrt(eig.values[k])).collect();
    let mut u = Matrix::zeros(n, r);
    let mut v = Matrix::zeros(q, r);
    for (c, &k) in keep.iter().enumerate() {
        let s = singular[c];
        if wide {
            for i in 0..n {
                u[(i, c)] = eig.vectors[(i, k)];
            }
            for i in 0..n {
                let ui = u[(i, c)];
                for j in 0..q {
                    v[(j, c)] += z[(i, j)] * ui / s;
                }
            }
        } else {
            for j in 0..q {
                v[(j, c)] = eig.vectors[(j, k)];
            }
            for i in 0..n {
                u[(i, c)] = linalg::dot(z.row(i), &v.column(c)) / s;
            }
        }
    }
    (u, v, singular)
}

/// Summed leave-one-out squared error of ridge regression with an
/// unpenalized intercept on `design` and `targets` at `alpha`.
pub fn loo_squared_error(design: &Matrix, targets: &Matrix, alpha: f64) -> f64 {
    RidgePath::new(design, targets).loo_squared_error(alpha)
}

/// Multi-output ridge regression with alpha chosen from `alphas` by
/// leave-one-out error (ties keep the earlier alpha).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeRegression {
    pub means: Vec<f64>,
    /// `q × C`.
    pub weights: Matrix,
    pub intercepts: Vec<f64>,
    pub alpha: f64,
    pub loo_errors: Vec<f64>,
}

impl RidgeRegression {
    pub fn fit(design: &Matrix, targets: &Matrix, alphas: &[f64]) -> Result<Self> {
        if design.rows() < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                got: design.rows(),
            });
        }
        if alphas.is_empty() {
            return Err(Error::InvalidConfig("empty alpha grid".into()));
        }
        let path = RidgePath::new(design, targets);
        let loo_errors: Vec<f64> = alphas.iter().map(|&a| path.loo_squared_error(a)).collect();
        let mut best = 0;
        for (i, e) in loo_errors.iter().enumerate() {
            if *e < loo_errors[best] {
                best = i;
            }
        }
        let alpha = alphas[best];
        let weights = path.coefficients(alpha);
        let (means, _) = center(design);
        let intercepts = (0..weights.cols())
            .map(|c| {
                path.target_means()[c]
                    - means.iter().enumerate().map(|(j, m)| m * weights[(j, c)]).sum::<f64>()
            })
            .collect();
        Ok(Self {
            means,
            weights,
            intercepts,
            alpha,
            loo_errors,
        })
    }

    pub fn predict_row(&self, row: &[f64]) -> Vec<f64> {
        let mut out = self.intercepts.clone();
        for (j, &x) in row.iter().enumerate() {
            for (o, w) in out.iter_mut().zip(self.weights.row(j)) {
                *o += x * w;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeModel {
    pub means: Vec<f64>,
    /// Population standard deviations; 1 for constant features.
    pub scales: Vec<f64>,
    /// `p × C`, zero rows for constant features.
    pub weights: Matrix,
    pub intercepts: Vec<f64>,
    pub alpha: f64,
    pub n_classes: usize,
    /// Set when training saw a single class; that class is always predicted.
    pub only_class: Option<usize>,
}

/// Fits the one-vs-rest ridge classifier (targets ±1) on `x` and `y`.
pub fn fit_ridge_cv(x: &Matrix, y: &[usize], n_classes: usize) -> Result<RidgeModel> {
    let (n, p) = (x.rows(), x.cols());
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    if y.len() != n {
        return Err(Error::ShapeMismatch { expected: n, got: y.len() });
    }
    if y.iter().any(|&c| c >= n_classes) {
        return Err(Error::InvalidConfig("class index out of range".into()));
    }
    if x.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    let (means, centered) = center(x);
    let mut scales = vec![1.0; p];
    let mut varying = Vec::new();
    for j in 0..p {
        let ss: f64 = (0..n).map(|i| centered[(i, j)] * centered[(i, j)]).sum();
        let sd = libm::sqrt(ss / n as f64);
        if sd > 0.0 {
            scales[j] = sd;
            varying.push(j);
        }
    }
    let first = y[0];
    if y.iter().all(|&c| c == first) {
        return Ok(RidgeModel {
            means,
            scales,
            weights: Matrix::zeros(p, n_classes),
            intercepts: (0..n_classes).map(|c| if c == first { 1.0 } else { -1.0 }).collect(),
            alpha: RIDGE_ALPHAS[0],
            n_classes,
            only_class: Some(first),
        });
    }
    let mut design = Matrix::zeros(n, varying.len());
    for i in 0..n {
        for (c, &j) in varying.iter().enumerate() {
            design[(i, c)] = centered[(i, j)] / scales[j];
        }
    }
    let mut targets = Matrix::zeros(n, n_classes);
    for (i, &label) in y.iter().enumerate() {
        for c in 0..n_classes {
            targets[(i, c)] = if c == label { 1.0 } else { -1.0 };
        }
    }
    let reg = RidgeRegression::fit(&design, &targets, &RIDGE_ALPHAS)?;
    let mut weights = Matrix::zeros(p, n_classes);
    for (r, &j) in varying.iter().enumerate() {
        weights.row_mut(j).copy_from_slice(reg.weights.row(r));
    }
    Ok(RidgeModel {
        means,
        scales,
        weights,
        intercepts: reg.intercepts,
        alpha: reg.alpha,
        n_classes,
        only_class: None,
    })
}

impl RidgeModel {
    pub fn n_features(&self) -> usize {
        self.means.len()
    }

    pub fn decision_function(&self, x: &Matrix) -> Result<Matrix> {
        if x.cols() != self.n_features() {
            return Err(Error::ShapeMismatch {
                expected: self.n_features(),
                got: x.cols(),
            });
        }
        let mut out = Matrix::zeros(x.rows(), self.n_classes);
        for i in 0..x.rows() {
            let row = out.row_mut(i);
            row.copy_from_slice(&self.intercepts);
            for (j, &v) in x.row(i).iter().enumerate() {
                let z = (v - self.means[j]) / self.scales[j];
                if z == 0.0 {
                    continue;
                }
                for (o, w) in row.iter_mut().zip(self.weights.row(j)) {
                    *o += z * w;
                }
            }
        }
        Ok(out)
    }

    pub fn predict_proba(&self, x: &Matrix) -> Result<Vec<Vec<f64>>> {
        let d = self.decision_function(x)?;
        Ok((0..d.rows())
            .map(|i| match self.only_class {
                Some(c) => (0..self.n_classes).map(|k| if k == c { 1.0 } else { 0.0 }).collect(),
                None => softmax(d.row(i)),
            })
            .collect())
    }
}

fn softmax(z: &[f64]) -> Vec<f64> {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = z.iter().map(|v| libm::exp(v - m)).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|v| v / s).collect()
}
