//! Truncated path signatures and the windowed signature transform.
//!
//! A level-`m` truncated signature lives in `R^d ⊕ R^{d²} ⊕ … ⊕ R^{d^m}`
//! (the scalar level 0 is always 1 and is not emitted). Level `j` is
//! flattened in lexicographic multi-index order, so entry `(i_1, …, i_j)` sits
//! at `Σ_r i_r d^{j-r}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::FeatureMatrix;
use crate::dataset::TimeSeriesDataset;
use crate::exec::Executor;
use crate::linalg::Matrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureConfig {
    /// Highest signature level kept (≥ 1).
    pub truncation_depth: usize,
    /// Depth of the dyadic window hierarchy; level ℓ has 2^ℓ windows.
    pub window_depth: usize,
    /// Prepend a zero to every series.
    pub basepoint: bool,
    /// Add normalized time as a second channel.
    pub time_augment: bool,
}

impl Default for SignatureConfig {
    fn default() -> Self {
        Self {
            truncation_depth: 4,
            window_depth: 2,
            basepoint: true,
            time_augment: true,
        }
    }
}

impl SignatureConfig {
    pub fn channels(&self) -> usize {
        1 + usize::from(self.time_augment)
    }

    pub fn path_length(&self, series_length: usize) -> usize {
        series_length + usize::from(self.basepoint)
    }

    /// Window depth actually used for series of this length: the configured
    /// depth, reduced until every window spans at least two points.
    pub fn effective_window_depth(&self, series_length: usize) -> usize {
        let segments = self.path_length(series_length).saturating_sub(1);
        let mut depth = self.window_depth;
        while depth > 0 && (1usize << depth) > segments {
            depth -= 1;
        }
        depth
    }
}

/// `Σ_{j=1..depth} d^j`.
pub fn signature_width(channels: usize, depth: usize) -> usize {
    (1..=depth).map(|j| channels.pow(j as u32)).sum()
}

/// Level-truncated signature of the piecewise-linear path through the rows of
/// `path` (`n × d`).
pub fn truncated_signature(path: &Matrix, depth: usize) -> Result<Vec<f64>> {
    if path.rows() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: path.rows(),
        });
    }
    if depth == 0 || path.cols() == 0 {
        return Err(Error::InvalidConfig(
            "signature needs depth ≥ 1 and at least one channel".into(),
        ));
    }
    let d = path.cols();
    let mut levels: Vec<Vec<f64>> = (1..=depth).map(|j| vec![0.0; d.pow(j as u32)]).collect();
    let mut increment = vec![0.0; d];
    for t in 1..path.rows() {
        for (c, inc) in increment.iter_mut().enumerate() {
            *inc = path[(t, c)] - path[(t - 1, c)];
        }
        let exp = tensor_exp(&increment, depth);
        chen_update(&mut levels, &exp);
    }
    Ok(levels.concat())
}

/// Levels 1..=depth of `exp(Δ) = Σ Δ^{⊗j} / j!`.
fn tensor_exp(increment: &[f64], depth: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(depth);
    out.push(increment.to_vec());
    for j in 2..=depth {
        let prev = &out[j - 2];
        let mut next = Vec::with_capacity(prev.len() * increment.len());
        for &a in prev {
            for &b in increment {
                next.push(a * b / j as f64);
            }
        }
        out.push(next);
    }
    out
}

/// `levels ← levels ⊗ rhs` in the truncated tensor algebra (both with unit
/// scalar part).
fn chen_update(levels: &mut [Vec<f64>], rhs: &[Vec<f64>]) {
    let depth = levels.len();
    for k in (1..=depth).rev() {
        for i in 1..k {
            let (left, right) = (&levels[i - 1], &rhs[k - i - 1]);
            let mut acc = vec![0.0; left.len() * right.len()];
            for (ai, &a) in left.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let row = &mut acc[ai * right.len()..(ai + 1) * right.len()];
                for (o, &b) in row.iter_mut().zip(right) {
                    *o = a * b;
                }
            }
            for (l, a) in levels[k - 1].iter_mut().zip(acc) {
                *l += a;
            }
        }
        for (l, e) in levels[k - 1].iter_mut().zip(&rhs[k - 1]) {
            *l += e;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureOutput {
    pub features: FeatureMatrix,
    /// Window depth used; lower than configured when windows would be too short.
    pub effective_window_depth: usize,
}

fn augmented_path(x: &[f64], cfg: &SignatureConfig) -> Matrix {
    let values: Vec<f64> = if cfg.basepoint {
        core::iter::once(0.0).chain(x.iter().copied()).collect()
    } else {
        x.to_vec()
    };
    let n = values.len();
    let d = cfg.channels();
    let mut path = Matrix::zeros(n, d);
    for (i, &v) in values.iter().enumerate() {
        path[(i, 0)] = v;
        if cfg.time_augment {
            path[(i, 1)] = i as f64 / (n - 1) as f64;
        }
    }
    path
}

/// Window `j` of `2^level` over `points` path points: indices
/// `[⌊j (points-1) / 2^level⌋, ⌊(j+1)(points-1) / 2^level⌋]`, inclusive, so
/// neighbouring windows share their boundary point.
fn window_bounds(points: usize, level: usize, j: usize) -> (usize, usize) {
    let segments = points - 1;
    let parts = 1usize << level;
    (j * segments / parts, (j + 1) * segments / parts)
}

fn multi_index_names(d: usize, depth: usize) -> Vec<String> {
    let mut names = Vec::new();
    for j in 1..=depth {
        for flat in 0..d.pow(j as u32) {
            let mut digits = Vec::with_capacity(j);
            let mut rest = flat;
            for _ in 0..j {
                digits.push(rest % d + 1);
                rest /= d;
            }
            digits.reverse();
            let parts: Vec<String> = digits.iter().map(|x| format!("{x}")).collect();
            names.push(parts.join("-"));
        }
    }
    names
}

/// Signature features of every case over the dyadic window hierarchy.
///
/// Columns are ordered by window level, then window, then signature entry,
/// and named `sig_l<level>w<window>_<multi-index>`.
pub fn signature_transform<E: Executor>(
    ds: &TimeSeriesDataset,
    cfg: &SignatureConfig,
    exec: &E,
) -> Result<SignatureOutput> {
    if cfg.truncation_depth == 0 {
        return Err(Error::InvalidConfig("truncation depth must be ≥ 1".into()));
    }
    let points = cfg.path_length(ds.series_length());
    if points < 2 {
        return Err(Error::TooShort { needed: 2, got: points });
    }
    let depth = cfg.effective_window_depth(ds.series_length());
    let windows: Vec<(usize, usize, usize, usize)> = (0..=depth)
        .flat_map(|level| {
            (0..1usize << level).map(move |j| {
                let (s, e) = window_bounds(points, level, j);
                (level, j, s, e)
            })
        })
        .collect();
    let rows = exec.map(ds.n_cases(), |case| {
        let path = augmented_path(ds.series(case), cfg);
        let mut row = Vec::with_capacity(windows.len() * signature_width(cfg.channels(), cfg.truncation_depth));
        for &(_, _, s, e) in &windows {
            let mut sub = Matrix::zeros(e - s + 1, path.cols());
            for (r, src) in (s..=e).enumerate() {
                sub.row_mut(r).copy_from_slice(path.row(src));
            }
            row.extend(truncated_signature(&sub, cfg.truncation_depth)?);
        }
        Ok(row)
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let entry_names = multi_index_names(cfg.channels(), cfg.truncation_depth);
    let names = windows
        .iter()
        .flat_map(|&(level, j, _, _)| entry_names.iter().map(move |e| format!("sig_l{level}w{j}_{e}")))
        .collect();
    Ok(SignatureOutput {
        features: FeatureMatrix::new(names, &rows)?,
        effective_window_depth: depth,
    })
}
