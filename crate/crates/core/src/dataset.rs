//! Labelled collections of equal-length univariate series, and stratified
//! train/test resampling.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::rng;
use crate::{Error, Result};

/// Shortest series accepted anywhere in the toolkit.
pub const MIN_SERIES_LENGTH: usize = 3;

/// Equal-length labelled collection of univariate series.
///
/// `class_names` is sorted and duplicate free; labels are stored as positions
/// in it. A dataset may hold zero cases (its length is then 0), which is useful
/// as an intermediate value but cannot be written or fitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeriesDataset {
    name: String,
    series_length: usize,
    values: Vec<f64>,
    labels: Vec<usize>,
    class_names: Vec<String>,
}

impl TimeSeriesDataset {
    /// Builds a dataset from rows of values and textual labels. Every label must
    /// appear among `class_names`, whose order is irrelevant.
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        series: Vec<Vec<f64>>,
        labels: &[S],
        class_names: impl IntoIterator<Item = String>,
    ) -> Result<Self> {
        let mut classes: Vec<String> = class_names.into_iter().collect();
        classes.sort();
        classes.dedup();
        if labels.len() != series.len() {
            return Err(Error::ShapeMismatch {
                expected: series.len(),
                got: labels.len(),
            });
        }
        let series_length = series.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(series.len() * series_length);
        for (case, s) in series.iter().enumerate() {
            if s.len() != series_length {
                return Err(Error::UnequalLength {
                    case,
                    expected: series_length,
                    got: s.len(),
                });
            }
            values.extend_from_slice(s);
        }
        let labels = labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                classes
                    .binary_search_by(|c| c.as_str().cmp(l))
                    .map_err(|_| Error::UnknownLabel(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(name.into(), series_length, values, labels, classes)
    }

    /// Builds a dataset from a flat row-major buffer and class indices.
    pub fn from_parts(
        name: String,
        series_length: usize,
        values: Vec<f64>,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if !class_names.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidConfig(
                "class names must be sorted and unique".into(),
            ));
        }
        if values.len() != labels.len() * series_length {
            return Err(Error::ShapeMismatch {
                expected: labels.len() * series_length,
                got: values.len(),
            });
        }
        if !labels.is_empty() && series_length < MIN_SERIES_LENGTH {
            return Err(Error::TooShort {
                needed: MIN_SERIES_LENGTH,
                got: series_length,
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= class_names.len()) {
            return Err(Error::UnknownLabel(alloc::format!("#{bad}")));
        }
        Ok(Self {
            name,
            series_length,
            values,
            labels,
            class_names,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n_cases(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn series_length(&self) -> usize {
        self.series_length
    }

    pub fn series(&self, case: usize) -> &[f64] {
        &self.values[case * self.series_length..(case + 1) * self.series_length]
    }

    pub fn iter_series(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.n_cases()).map(move |i| self.series(i))
    }

    /// Row-major `n_cases × series_length` buffer.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self, case: usize) -> usize {
        self.labels[case]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_name(&self, case: usize) -> &str {
        &self.class_names[self.labels[case]]
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.class_names.len()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// New dataset holding the given cases in the given order.
    pub fn select(&self, cases: &[usize]) -> Self {
        let mut values = Vec::with_capacity(cases.len() * self.series_length);
        for &c in cases {
            values.extend_from_slice(self.series(c));
        }
        Self {
            name: self.name.clone(),
            series_length: if cases.is_empty() { 0 } else { self.series_length },
            values,
            labels: cases.iter().map(|&c| self.labels[c]).collect(),
            class_names: self.class_names.clone(),
        }
    }
}

/// A train/test split derived from an original split.
#[derive(Debug, Clone, PartialEq)]
pub struct ResamplePair {
    pub train: TimeSeriesDataset,
    pub test: TimeSeriesDataset,
    pub resample_id: u64,
}

/// Stratified reshuffle of a train/test split.
///
/// Resample 0 is the original split. Any other id pools the cases of each class
/// (train cases first, then test cases, in file order), shuffles them with the
/// child stream `(resample_id, class index)` and deals the original per-class
/// train count back to train. Output cases are grouped by class index.
pub fn stratified_resample(
    train: &TimeSeriesDataset,
    test: &TimeSeriesDataset,
    resample_id: u64,
) -> Result<ResamplePair> {
    if train.class_names != test.class_names {
        return Err(Error::IncompatibleDatasets(
            "train and test declare different classes".into(),
        ));
    }
    if !train.is_empty() && !test.is_empty() && train.series_length != test.series_length {
        return Err(Error::IncompatibleDatasets(alloc::format!(
            "series lengths differ: {} vs {}",
            train.series_length,
            test.series_length
        )));
    }
    if resample_id == 0 {
        return Ok(ResamplePair {
            train: train.clone(),
            test: test.clone(),
            resample_id,
        });
    }

    let series_length = train.series_length.max(test.series_length);
    let mut train_values = Vec::with_capacity(train.values.len());
    let mut train_labels = Vec::with_capacity(train.n_cases());
    let mut test_values = Vec::with_capacity(test.values.len());
    let mut test_labels = Vec::with_capacity(test.n_cases());
    let train_counts = train.class_counts();

    for class in 0..train.n_classes() {
        let mut pool: Vec<&[f64]> = (0..train.n_cases())
            .filter(|&i| train.labels[i] == class)
            .map(|i| train.series(i))
            .chain(
                (0..test.n_cases())
                    .filter(|&i| test.labels[i] == class)
                    .map(|i| test.series(i)),
            )
            .collect();
        let mut rng = rng::stream(resample_id, class as u64);
        pool.shuffle(&mut rng);
        let (to_train, to_test) = pool.split_at(train_counts[class]);
        for s in to_train {
            train_values.extend_from_slice(s);
            train_labels.push(class);
        }
        for s in to_test {
            test_values.extend_from_slice(s);
            test_labels.push(class);
        }
    }

    let build = |src: &TimeSeriesDataset, values: Vec<f64>, labels: Vec<usize>| TimeSeriesDataset {
        name: src.name.clone(),
        series_length: if labels.is_empty() { 0 } else { series_length },
        values,
        labels,
        class_names: src.class_names.clone(),
    };
    Ok(ResamplePair {
        train: build(train, train_values, train_labels),
        test: build(test, test_values, test_labels),
        resample_id,
    })
}
