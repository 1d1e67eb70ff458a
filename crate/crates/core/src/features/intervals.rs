//! Random phase-dependent intervals and per-interval feature extraction.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{basic_stats, c22_bank, FeatureMatrix, BASIC_NAMES, C22_MIN_LENGTH, C22_NAMES};
use crate::dataset::{TimeSeriesDataset, MIN_SERIES_LENGTH};
use crate::exec::Executor;
use crate::rng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet {
    pub series_length: usize,
    pub intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Feature bank applied to each interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalBank {
    Basic,
    C22,
}

impl IntervalBank {
    pub fn width(self) -> usize {
        self.names().len()
    }

    pub fn names(self) -> &'static [&'static str] {
        match self {
            IntervalBank::Basic => &BASIC_NAMES,
            IntervalBank::C22 => &C22_NAMES,
        }
    }

    pub fn min_length(self) -> usize {
        match self {
            IntervalBank::Basic => 1,
            IntervalBank::C22 => C22_MIN_LENGTH,
        }
    }

    fn apply(self, x: &[f64], out: &mut Vec<f64>) -> Result<()> {
        match self {
            IntervalBank::Basic => out.extend_from_slice(&basic_stats(x)?),
            IntervalBank::C22 => out.extend_from_slice(&c22_bank(x)?),
        }
        Ok(())
    }
}

/// Draws `n_intervals` intervals: start uniform in `[0, L - 3]`, then length
/// uniform in `[3, L - start]`.
pub fn sample_intervals(series_length: usize, n_intervals: usize, seed: u64) -> Result<IntervalSet> {
    if series_length < MIN_SERIES_LENGTH {
        return Err(Error::TooShort {
            needed: MIN_SERIES_LENGTH,
            got: series_length,
        });
    }
    let mut rng = rng::stream(seed, 0);
    let intervals = (0..n_intervals)
        .map(|_| {
            let start = rng.gen_range(0..=series_length - MIN_SERIES_LENGTH);
            let length = rng.gen_range(MIN_SERIES_LENGTH..=series_length - start);
            Interval { start, length }
        })
        .collect();
    Ok(IntervalSet {
        series_length,
        intervals,
    })
}

/// Widens an interval that is shorter than `min_len`: first leftward (clamped
/// at 0), then rightward.
fn widen(iv: Interval, min_len: usize, series_length: usize) -> (usize, usize) {
    let end = iv.start + iv.length;
    if iv.length >= min_len {
        return (iv.start, end);
    }
    let start = end.saturating_sub(min_len);
    let end = (start + min_len).min(series_length);
    (start, end)
}

/// Applies `bank` to every interval of every case and concatenates the
/// results. Columns are named `i<interval>_<feature>`.
pub fn interval_transform<E: Executor>(
    ds: &TimeSeriesDataset,
    intervals: &IntervalSet,
    bank: IntervalBank,
    exec: &E,
) -> Result<FeatureMatrix> {
    let length = ds.series_length();
    if !ds.is_empty() && length != intervals.series_length {
        return Err(Error::ShapeMismatch {
            expected: intervals.series_length,
            got: length,
        });
    }
    if let Some(bad) = intervals
        .intervals
        .iter()
        .find(|iv| iv.length < MIN_SERIES_LENGTH || iv.start + iv.length > intervals.series_length)
    {
        return Err(Error::InvalidConfig(format!(
            "interval ({}, {}) does not fit a series of length {}",
            bad.start, bad.length, intervals.series_length
        )));
    }
    if intervals.series_length < bank.min_length() {
        return Err(Error::TooShort {
            needed: bank.min_length(),
            got: intervals.series_length,
        });
    }
    let bounds: Vec<(usize, usize)> = intervals
        .intervals
        .iter()
        .map(|&iv| widen(iv, bank.min_length(), intervals.series_length))
        .collect();
    let rows = exec.map(ds.n_cases(), |case| {
        let x = ds.series(case);
        let mut row = Vec::with_capacity(bounds.len() * bank.width());
        for &(s, e) in &bounds {
            bank.apply(&x[s..e], &mut row)?;
        }
        Ok(row)
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let names: Vec<String> = (0..bounds.len())
        .flat_map(|i| bank.names().iter().map(move |f| format!("i{i}_{f}")))
        .collect();
    FeatureMatrix::new(names, &rows)
}
