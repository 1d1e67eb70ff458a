use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::FeatureMatrix;
use crate::linalg::{self, Matrix};
use crate::{Error, Result};

/// Fitted principal component projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    /// Training column means.
    pub means: Vec<f64>,
    /// `p × k` loadings with orthonormal columns, by non-increasing variance.
    pub loadings: Matrix,
    /// Variance along each retained component.
    pub explained_variance: Vec<f64>,
    /// Total variance of the training columns (trace of the covariance).
    pub total_variance: f64,
}

impl PcaModel {
    pub fn k(&self) -> usize {
        self.loadings.cols()
    }

    pub fn n_inputs(&self) -> usize {
        self.means.len()
    }

    /// Projects one row onto the retained components.
    pub fn project(&self, row: &[f64]) -> Vec<f64> {
        let k = self.k();
        let mut out = vec![0.0; k];
        for (j, (&v, &m)) in row.iter().zip(&self.means).enumerate() {
            let c = v - m;
            if c == 0.0 {
                continue;
            }
            for (o, &l) in out.iter_mut().zip(self.loadings.row(j)) {
                *o += c * l;
            }
        }
        out
    }
}

/// Principal components of the rows of `x` (centering only), keeping `k`.
pub fn fit_pca(train: &FeatureMatrix, k: usize) -> Result<PcaModel> {
    fit_pca_matrix(train.values(), k)
}

pub fn fit_pca_matrix(x: &Matrix, k: usize) -> Result<PcaModel> {
    let (n, p) = (x.rows(), x.cols());
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let max = (n - 1).min(p);
    if k == 0 || k > max {
        return Err(Error::BadRank { k, max });
    }
    let (means, centered) = center(x);
    let (values, vectors) = principal_axes(&centered);
    let total_variance = values.iter().map(|v| v.max(0.0)).sum();
    let mut loadings = Matrix::zeros(p, k);
    for j in 0..p {
        for c in 0..k {
            loadings[(j, c)] = vectors[(j, c)];
        }
    }
    linalg::canonicalize_signs(&mut loadings);
    Ok(PcaModel {
        means,
        loadings,
        explained_variance: values[..k].iter().map(|v| v.max(0.0)).collect(),
        total_variance,
    })
}

/// Projects `x` with `model`; output columns are named `pc1..pck`.
pub fn apply_pca(model: &PcaModel, x: &FeatureMatrix) -> Result<FeatureMatrix> {
    if x.n_features() != model.n_inputs() {
        return Err(Error::ShapeMismatch {
            expected: model.n_inputs(),
            got: x.n_features(),
        });
    }
    let rows: Vec<Vec<f64>> = (0..x.n_rows()).map(|i| model.project(x.row(i))).collect();
    FeatureMatrix::new((1..=model.k()).map(|c| format!("pc{c}")).collect(), &rows)
}

pub(crate) fn center(x: &Matrix) -> (Vec<f64>, Matrix) {
    let (n, p) = (x.rows(), x.cols());
    let mut means = vec![0.0; p];
    for i in 0..n {
        for (m, v) in means.iter_mut().zip(x.row(i)) {
            *m += v;
        }
    }
    for m in means.iter_mut() {
        *m /= n as f64;
    }
    let mut c = x.clone();
    for i in 0..n {
        for (v, m) in c.row_mut(i).iter_mut().zip(&means) {
            *v -= m;
        }
    }
    (means, c)
}

/// Eigenpairs of the covariance of already-centered rows: all `p` variances
/// (non-increasing) and a `p × p` orthonormal basis whose leading columns are
/// the principal axes. Uses the `n × n` Gram matrix when `p > n`.
pub(crate) fn principal_axes(centered: &Matrix) -> (Vec<f64>, Matrix) {
    let (n, p) = (centered.rows(), centered.cols());
    let dof = (n.max(2) - 1) as f64;
    if p <= n {
        let mut cov = centered.gram();
        for i in 0..p {
            for j in 0..p {
                cov[(i, j)] /= dof;
            }
        }
        let e = linalg::symmetric_eigen(&cov);
        return (e.values, e.vectors);
    }
    let mut g = centered.outer_gram();
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] /= dof;
        }
    }
    let e = linalg::symmetric_eigen(&g);
    let top = e.values.first().copied().unwrap_or(0.0).max(0.0);
    let tol = top * 1e-12;
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(p);
    let mut values = Vec::with_capacity(p);
    for c in 0..n {
        let lambda = e.values[c];
        if !(lambda > tol) {
            break;
        }
        let mut v = vec![0.0; p];
        for i in 0..n {
            let u = e.vectors[(i, c)];
            for (vj, &xj) in v.iter_mut().zip(centered.row(i)) {
                *vj += u * xj;
            }
        }
        if orthonormalize_against(&mut v, &basis) {
            basis.push(v);
            values.push(lambda);
        }
    }
    // Complete to a full basis with zero-variance directions.
    for j in 0..p {
        if basis.len() == p {
            break;
        }
        let mut v = vec![0.0; p];
        v[j] = 1.0;
        if orthonormalize_against(&mut v, &basis) {
            basis.push(v);
            values.push(0.0);
        }
    }
    let mut vectors = Matrix::zeros(p, p);
    for (c, v) in basis.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            vectors[(j, c)] = x;
        }
    }
    (values, vectors)
}

/// Two passes of modified Gram–Schmidt; returns false if `v` is (nearly)
/// dependent on `basis`.
fn orthonormalize_against(v: &mut [f64], basis: &[Vec<f64>]) -> bool {
    let start = libm::sqrt(linalg::dot(v, v));
    if !(start > 0.0) {
        return false;
    }
    for _ in 0..2 {
        for b in basis {
            let d = linalg::dot(v, b);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= d * y;
            }
        }
    }
    let norm = libm::sqrt(linalg::dot(v, v));
    if norm <= start * 1e-6 {
        return false;
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use rand::Rng;

    fn fm(rows: &[Vec<f64>]) -> FeatureMatrix {
        let names: Vec<String> = (0..rows[0].len()).map(|i| i.to_string()).collect();
        FeatureMatrix::new(names, rows).unwrap()
    }

    fn random_rows(n: usize, p: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = crate::rng::stream(seed, 0);
        (0..n).map(|_| (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect()
    }

    fn orthonormality_error(l: &Matrix) -> f64 {
        let g = l.gram();
        let mut worst: f64 = 0.0;
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - want).abs());
            }
        }
        worst
    }

    #[test]
    fn points_on_a_line() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, 2.0 * i as f64 + 1.0]).collect();
        let m = fit_pca(&fm(&rows), 1).unwrap();
        assert!((m.explained_variance[0] / m.total_variance - 1.0).abs() < 1e-12);
        for r in &rows {
            let z = m.project(r);
            for j in 0..2 {
                let rec = m.means[j] + z[0] * m.loadings[(j, 0)];
                assert!((rec - r[j]).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn projection_is_decorrelated() {
        let rows = random_rows(30, 5, 2);
        let x = fm(&rows);
        let m = fit_pca(&x, 5).unwrap();
        let z = apply_pca(&m, &x).unwrap();
        let (_, c) = center(z.values());
        let cov = c.gram();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert!((cov[(i, j)] / 29.0).abs() < 1e-8);
                }
            }
            if i > 0 {
                assert!(cov[(i, i)] <= cov[(i - 1, i - 1)] + 1e-12);
            }
        }
    }

    #[test]
    fn random_loadings_are_orthonormal() {
        let m = fit_pca(&fm(&random_rows(20, 6, 7)), 6).unwrap();
        assert!(orthonormality_error(&m.loadings) < 1e-8);
    }

    #[test]
    fn wide_matrices_use_the_gram_path() {
        let m = fit_pca(&fm(&random_rows(8, 40, 3)), 7).unwrap();
        assert!(orthonormality_error(&m.loadings) < 1e-8);
        let (_, full) = principal_axes(&center(&Matrix::from_rows(&random_rows(8, 40, 3))).1);
        assert!(orthonormality_error(&full) < 1e-8);
    }

    #[test]
    fn sign_convention() {
        let m = fit_pca(&fm(&random_rows(15, 4, 11)), 3).unwrap();
        for c in 0..3 {
            let col = m.loadings.column(c);
            let big = col.iter().copied().fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
            assert!(big > 0.0);
        }
    }

    #[test]
    fn rank_bounds() {
        let x = fm(&random_rows(4, 6, 1));
        assert_eq!(fit_pca(&x, 4), Err(Error::BadRank { k: 4, max: 3 }));
        assert_eq!(fit_pca(&x, 0), Err(Error::BadRank { k: 0, max: 3 }));
    }
}
