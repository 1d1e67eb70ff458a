use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::wilcoxon::{holm_adjust, wilcoxon_signed_rank};
use crate::stats;
use crate::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.05;
pub const MIN_DATASETS: usize = 5;

/// Mean rank of each classifier over datasets, ranking accuracy descending
/// (rank 1 is best, ties share the average rank).
///
/// `table[d][c]` is classifier `c` on dataset `d`; a NaN cell or a short row is
/// an [`Error::IncompleteTable`].
pub fn average_ranks(table: &[Vec<f64>]) -> Result<Vec<f64>> {
    let k = table.first().map_or(0, |r| r.len());
    if table.is_empty() || k == 0 {
        return Err(Error::EmptyInput);
    }
    if table.iter().any(|r| r.len() != k || r.iter().any(|v| v.is_nan())) {
        return Err(Error::IncompleteTable);
    }
    let mut sums = vec![0.0; k];
    for row in table {
        let negated: Vec<f64> = row.iter().map(|v| -v).collect();
        for (s, r) in sums.iter_mut().zip(stats::average_ranks(&negated)) {
            *s += r;
        }
    }
    Ok(sums.iter().map(|s| s / table.len() as f64).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub classifiers: Vec<String>,
    pub datasets: Vec<String>,
    /// `accuracies[d][c]`.
    pub accuracies: Vec<Vec<f64>>,
    pub average_ranks: Vec<f64>,
    /// Raw two-sided Wilcoxon p-values, symmetric with unit diagonal.
    pub p_values: Vec<Vec<f64>>,
    /// Holm-adjusted p-values over the family of all pairs.
    pub adjusted_p_values: Vec<Vec<f64>>,
    pub alpha: f64,
    /// Classifier indices from best to worst average rank; rank ties go by name.
    pub order: Vec<usize>,
    /// Maximal runs of `order` with no significant pair, as classifier indices.
    pub cliques: Vec<Vec<usize>>,
}

impl ComparisonReport {
    pub fn significant(&self, a: usize, b: usize) -> bool {
        a != b && self.adjusted_p_values[a][b] < self.alpha
    }
}

/// Pairwise Wilcoxon tests with Holm correction and rank-ordered cliques.
///
/// A pair with fewer than five non-zero differences gets p = 1.
pub fn build_cliques(
    classifiers: &[String],
    datasets: &[String],
    table: &[Vec<f64>],
    alpha: f64,
) -> Result<ComparisonReport> {
    let k = classifiers.len();
    if k < 2 {
        return Err(Error::InsufficientData { needed: 2, got: k });
    }
    if table.len() < MIN_DATASETS {
        return Err(Error::InsufficientData {
            needed: MIN_DATASETS,
            got: table.len(),
        });
    }
    if datasets.len() != table.len() {
        return Err(Error::ShapeMismatch {
            expected: table.len(),
            got: datasets.len(),
        });
    }
    if table.iter().any(|r| r.len() != k) {
        return Err(Error::IncompleteTable);
    }
    let ranks = average_ranks(table)?;

    let column = |c: usize| table.iter().map(|r| r[c]).collect::<Vec<f64>>();
    let mut pairs = Vec::new();
    let mut raw = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let p = match wilcoxon_signed_rank(&column(a), &column(b)) {
                Ok(r) => r.p_value,
                Err(Error::InsufficientData { .. }) => 1.0,
                Err(e) => return Err(e),
            };
            pairs.push((a, b));
            raw.push(p);
        }
    }
    let adjusted = holm_adjust(&raw);
    let mut p_values = vec![vec![1.0; k]; k];
    let mut adjusted_p_values = vec![vec![1.0; k]; k];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        p_values[a][b] = raw[i];
        p_values[b][a] = raw[i];
        adjusted_p_values[a][b] = adjusted[i];
        adjusted_p_values[b][a] = adjusted[i];
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| ranks[a].total_cmp(&ranks[b]).then_with(|| classifiers[a].cmp(&classifiers[b])));

    let significant = |a: usize, b: usize| adjusted_p_values[a][b] < alpha;
    // Furthest end of a non-significant run starting at each position.
    let ends: Vec<usize> = (0..k)
        .map(|i| {
            let mut e = i;
            while e + 1 < k && (i..=e).all(|m| !significant(order[m], order[e + 1])) {
                e += 1;
            }
            e
        })
        .collect();
    let mut cliques = Vec::new();
    let mut furthest: Option<usize> = None;
    for (i, &e) in ends.iter().enumerate() {
        if furthest.is_none_or(|f| e > f) {
            cliques.push(order[i..=e].to_vec());
            furthest = Some(e);
        }
    }

    Ok(ComparisonReport {
        classifiers: classifiers.to_vec(),
        datasets: datasets.to_vec(),
        accuracies: table.to_vec(),
        average_ranks: ranks,
        p_values,
        adjusted_p_values,
        alpha,
        order,
        cliques,
    })
}
