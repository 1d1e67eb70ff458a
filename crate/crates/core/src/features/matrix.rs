use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::{Error, Result};

/// Named numeric feature columns, one row per case. All entries are finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    values: Matrix,
    names: Vec<String>,
    sanitized: usize,
}

impl FeatureMatrix {
    /// Builds a matrix from rows, replacing non-finite entries with 0.
    pub fn new(names: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        for r in rows {
            if r.len() != names.len() {
                return Err(Error::ShapeMismatch {
                    expected: names.len(),
                    got: r.len(),
                });
            }
        }
        let mut values = Matrix::from_vec(
            rows.len(),
            names.len(),
            rows.iter().flat_map(|r| r.iter().copied()).collect(),
        );
        let sanitized = sanitize(&mut values);
        Self::checked(names, values, sanitized)
    }

    /// Wraps an existing matrix, replacing non-finite entries with 0.
    pub fn from_matrix(names: Vec<String>, mut values: Matrix) -> Result<Self> {
        if values.cols() != names.len() {
            return Err(Error::ShapeMismatch {
                expected: names.len(),
                got: values.cols(),
            });
        }
        let sanitized = sanitize(&mut values);
        Self::checked(names, values, sanitized)
    }

    fn checked(names: Vec<String>, values: Matrix, sanitized: usize) -> Result<Self> {
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig(alloc::format!(
                "duplicate feature name `{}`",
                w[0]
            )));
        }
        Ok(Self {
            values,
            names,
            sanitized,
        })
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n_rows(&self) -> usize {
        self.values.rows()
    }

    pub fn n_features(&self) -> usize {
        self.names.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.values.row(i)
    }

    /// Number of non-finite raw values replaced by 0.
    pub fn sanitized(&self) -> usize {
        self.sanitized
    }
}

fn sanitize(m: &mut Matrix) -> usize {
    let mut count = 0;
    for i in 0..m.rows() {
        for v in m.row_mut(i) {
            if !v.is_finite() {
                *v = 0.0;
                count += 1;
            }
        }
    }
    count
}
