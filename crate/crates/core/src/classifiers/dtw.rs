//! Dynamic time warping and the window-tuned 1-NN classifier.

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::dataset::TimeSeriesDataset;
use crate::exec::Executor;
use crate::{Error, Result};

/// The window grid is `k / DTW_GRID_STEPS` for `k = 0..=DTW_GRID_STEPS`.
pub const DTW_GRID_STEPS: usize = 100;

/// Sakoe–Chiba radius for a window fraction over series of length `n`.
pub fn band_radius(window: f64, n: usize) -> usize {
    let r = libm::ceil(window * n as f64 - 1e-9);
    if r <= 0.0 {
        0
    } else {
        (r as usize).min(n)
    }
}

/// DTW cost with squared pointwise differences inside a band of `radius`.
///
/// Returns `f64::INFINITY` once every cell of a row reaches `cutoff`.
pub fn dtw_banded(a: &[f64], b: &[f64], radius: usize, cutoff: f64) -> f64 {
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let mut prev = vec![f64::INFINITY; n];
    let mut cur = vec![f64::INFINITY; n];
    for i in 0..n {
        let lo = i.saturating_sub(radius);
        let hi = (i + radius).min(n - 1);
        cur.iter_mut().for_each(|c| *c = f64::INFINITY);
        let mut row_min = f64::INFINITY;
        for j in lo..=hi {
            let d = a[i] - b[j];
            let cost = d * d;
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let mut m = f64::INFINITY;
                if i > 0 {
                    m = m.min(prev[j]);
                    if j > 0 {
                        m = m.min(prev[j - 1]);
                    }
                }
                if j > 0 {
                    m = m.min(cur[j - 1]);
                }
                m
            };
            cur[j] = cost + best;
            row_min = row_min.min(cur[j]);
        }
        if row_min >= cutoff {
            return f64::INFINITY;
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[n - 1]
}

/// DTW distance between equal-length series with band `|i - j| <= ceil(window * n)`.
pub fn dtw_distance(a: &[f64], b: &[f64], window: f64) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if !(0.0..=1.0).contains(&window) {
        return Err(Error::InvalidConfig("window must lie in [0, 1]".into()));
    }
    Ok(dtw_banded(a, b, band_radius(window, a.len()), f64::INFINITY))
}

/// Nearest case of `ds` to `query`, skipping `skip`; distance ties keep the
/// lowest index.
fn nearest_in(ds: &TimeSeriesDataset, query: &[f64], skip: Option<usize>, radius: usize) -> usize {
    let mut best = f64::INFINITY;
    let mut arg = usize::MAX;
    for j in 0..ds.n_cases() {
        if Some(j) == skip {
            continue;
        }
        let d = dtw_banded(query, ds.series(j), radius, best);
        if d < best || arg == usize::MAX {
            best = best.min(d);
            arg = j;
        }
    }
    arg
}

/// Leave-one-out 1-NN accuracy on `train` at the given window fraction.
pub fn loo_accuracy<E: Executor>(train: &TimeSeriesDataset, window: f64, exec: &E) -> Result<f64> {
    if train.n_cases() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: train.n_cases(),
        });
    }
    Ok(loo_at_radius(train, band_radius(window, train.series_length()), exec))
}

fn loo_at_radius<E: Executor>(train: &TimeSeriesDataset, radius: usize, exec: &E) -> f64 {
    let n = train.n_cases();
    let hits = exec
        .map(n, |i| {
            let j = nearest_in(train, train.series(i), Some(i), radius);
            usize::from(train.label(j) == train.label(i))
        })
        .into_iter()
        .sum::<usize>();
    hits as f64 / n as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnDtwModel {
    train: TimeSeriesDataset,
    window: f64,
    /// LOO accuracy at each grid window; empty when the window was fixed.
    tuning_accuracies: Vec<f64>,
}

impl KnnDtwModel {
    /// A model with a fixed window and no tuning.
    pub fn with_window(train: TimeSeriesDataset, window: f64) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if !(0.0..=1.0).contains(&window) {
            return Err(Error::InvalidConfig("window must lie in [0, 1]".into()));
        }
        Ok(Self {
            train,
            window,
            tuning_accuracies: Vec::new(),
        })
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn tuning_accuracies(&self) -> &[f64] {
        &self.tuning_accuracies
    }

    pub fn train(&self) -> &TimeSeriesDataset {
        &self.train
    }

    /// Index of the training case nearest to `query`.
    pub fn nearest(&self, query: &[f64]) -> Result<usize> {
        if query.len() != self.train.series_length() {
            return Err(Error::ShapeMismatch {
                expected: self.train.series_length(),
                got: query.len(),
            });
        }
        Ok(nearest_in(&self.train, query, None, band_radius(self.window, query.len())))
    }

    /// One-hot rows over the training class set.
    pub fn predict_proba<E: Executor>(&self, test: &TimeSeriesDataset, exec: &E) -> Result<Vec<Vec<f64>>> {
        if !test.is_empty() && test.series_length() != self.train.series_length() {
            return Err(Error::ShapeMismatch {
                expected: self.train.series_length(),
                got: test.series_length(),
            });
        }
        let c = self.train.n_classes();
        exec.map(test.n_cases(), |i| {
            let j = self.nearest(test.series(i))?;
            let mut row = vec![0.0; c];
            row[self.train.label(j)] = 1.0;
            Ok(row)
        })
        .into_iter()
        .collect()
    }
}

/// Tunes the window over the percent grid by leave-one-out accuracy; ties go
/// to the smallest window.
pub fn fit_knn_dtw<E: Executor>(train: &TimeSeriesDataset, exec: &E) -> Result<KnnDtwModel> {
    if train.n_cases() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: train.n_cases(),
        });
    }
    let n = train.series_length();
    let mut accuracies = Vec::with_capacity(DTW_GRID_STEPS + 1);
    let mut cached: Option<(usize, f64)> = None;
    for k in 0..=DTW_GRID_STEPS {
        let radius = band_radius(k as f64 / DTW_GRID_STEPS as f64, n).min(n.saturating_sub(1));
        let acc = match cached {
            Some((r, a)) if r == radius => a,
            _ => loo_at_radius(train, radius, exec),
        };
        cached = Some((radius, acc));
        accuracies.push(acc);
    }
    let mut best = 0;
    for (k, a) in accuracies.iter().enumerate() {
        if *a > accuracies[best] {
            best = k;
        }
    }
    Ok(KnnDtwModel {
        train: train.clone(),
        window: best as f64 / DTW_GRID_STEPS as f64,
        tuning_accuracies: accuracies,
    })
}
