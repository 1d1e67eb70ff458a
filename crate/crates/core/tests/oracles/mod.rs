#![allow(dead_code, clippy::needless_range_loop)]
//! Slow reference implementations used to check the fast paths.

use freshprince_core::linalg::Matrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Matrix {
    Matrix::from_vec(n, p, (0..n * p).map(|_| rng.gen_range(-3.0..3.0)).collect())
}

pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

/// Leave-one-out by refitting ridge with an unpenalized intercept n times.
pub fn refit_loo(x: &Matrix, y: &Matrix, alpha: f64) -> f64 {
    let (n, p) = (x.rows(), x.cols());
    let mut total = 0.0;
    for out in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&i| i != out).collect();
        let m = keep.len() as f64;
        let xm: Vec<f64> = (0..p).map(|j| keep.iter().map(|&i| x[(i, j)]).sum::<f64>() / m).collect();
        for t in 0..y.cols() {
            let ym = keep.iter().map(|&i| y[(i, t)]).sum::<f64>() / m;
            let mut a = vec![vec![0.0; p]; p];
            let mut b = vec![0.0; p];
            for &i in &keep {
                for r in 0..p {
                    let zr = x[(i, r)] - xm[r];
                    b[r] += zr * (y[(i, t)] - ym);
                    for c in 0..p {
                        a[r][c] += zr * (x[(i, c)] - xm[c]);
                    }
                }
            }
            for (r, row) in a.iter_mut().enumerate() {
                row[r] += alpha;
            }
            let w = solve(a, b);
            let pred = ym + (0..p).map(|j| (x[(out, j)] - xm[j]) * w[j]).sum::<f64>();
            total += (y[(out, t)] - pred).powi(2);
        }
    }
    total
}

pub fn brute_dtw(a: &[f64], b: &[f64], radius: usize, i: usize, j: usize) -> f64 {
    if i.abs_diff(j) > radius {
        return f64::INFINITY;
    }
    let cost = (a[i] - b[j]).powi(2);
    if i == 0 && j == 0 {
        return cost;
    }
    let mut best = f64::INFINITY;
    if i > 0 {
        best = best.min(brute_dtw(a, b, radius, i - 1, j));
    }
    if j > 0 {
        best = best.min(brute_dtw(a, b, radius, i, j - 1));
    }
    if i > 0 && j > 0 {
        best = best.min(brute_dtw(a, b, radius, i - 1, j - 1));
    }
    cost + best
}

/// Full enumeration of the `2^n` sign patterns.
pub fn enumeration_p(d: &[f64]) -> f64 {
    let mags: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let n = d.len();
    let ranks: Vec<f64> = (0..n)
        .map(|i| {
            let below = mags.iter().filter(|&&m| m < mags[i]).count() as f64;
            let equal = mags.iter().filter(|&&m| m == mags[i]).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let total: f64 = ranks.iter().sum();
    let observed = {
        let wp: f64 = d.iter().zip(&ranks).filter(|(v, _)| **v > 0.0).map(|(_, r)| r).sum();
        wp.min(total - wp)
    };
    let mut hits = 0u64;
    for mask in 0u32..(1 << n) {
        let wp: f64 = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| ranks[b]).sum();
        if wp.min(total - wp) <= observed {
            hits += 1;
        }
    }
    hits as f64 / (1u64 << n) as f64
}

pub fn tensor_product(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let depth = a.len();
    (1..=depth)
        .map(|k| {
            let mut level: Vec<f64> = a[k - 1].iter().zip(&b[k - 1]).map(|(x, y)| x + y).collect();
            for i in 1..k {
                let (l, r) = (&a[i - 1], &b[k - i - 1]);
                for (x, lv) in l.iter().enumerate() {
                    for (y, rv) in r.iter().enumerate() {
                        level[x * r.len() + y] += lv * rv;
                    }
                }
            }
            level
        })
        .collect()
}

pub fn split_levels(flat: &[f64], d: usize, depth: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut at = 0;
    for j in 1..=depth {
        let w = d.pow(j as u32);
        out.push(flat[at..at + w].to_vec());
        at += w;
    }
    out
}
