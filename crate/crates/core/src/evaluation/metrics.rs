use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::stats::average_ranks;
use crate::{Error, Result};

/// One test case's outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub true_label: usize,
    pub predicted_label: usize,
    pub probabilities: Vec<f64>,
    pub fit_time_ms: f64,
    pub predict_time_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub acc: f64,
    pub balacc: f64,
    pub f1_macro: f64,
    /// Macro one-vs-rest area under the ROC curve.
    pub auroc: f64,
    /// Mean negative natural log of the true-class probability, clamped at 1e-16.
    pub nll: f64,
}

pub const NLL_FLOOR: f64 = 1e-16;

/// Accuracy, balanced accuracy, macro F1, macro AUROC and NLL.
///
/// Balanced accuracy and AUROC average over classes present in the truth;
/// macro F1 averages over all `n_classes`, scoring a class that is never
/// true nor predicted as 0. When no class has both positives and negatives
/// the AUROC is reported as 0.5.
pub fn compute_metrics(records: &[PredictionRecord], n_classes: usize) -> Result<MetricReport> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    for r in records {
        if r.true_label >= n_classes || r.predicted_label >= n_classes || r.probabilities.len() != n_classes {
            return Err(Error::ShapeMismatch {
                expected: n_classes,
                got: r.probabilities.len().max(r.true_label.max(r.predicted_label) + 1),
            });
        }
    }
    let n = records.len();
    let mut tp = vec![0usize; n_classes];
    let mut truths = vec![0usize; n_classes];
    let mut preds = vec![0usize; n_classes];
    for r in records {
        truths[r.true_label] += 1;
        preds[r.predicted_label] += 1;
        if r.true_label == r.predicted_label {
            tp[r.true_label] += 1;
        }
    }
    let correct: usize = tp.iter().sum();
    let acc = correct as f64 / n as f64;

    let present: Vec<usize> = (0..n_classes).filter(|&c| truths[c] > 0).collect();
    let balacc = present.iter().map(|&c| tp[c] as f64 / truths[c] as f64).sum::<f64>() / present.len() as f64;

    let f1_macro = if n_classes == 0 {
        0.0
    } else {
        (0..n_classes)
            .map(|c| {
                let denom = truths[c] + preds[c];
                if denom == 0 {
                    0.0
                } else {
                    2.0 * tp[c] as f64 / denom as f64
                }
            })
            .sum::<f64>()
            / n_classes as f64
    };

    let mut aucs = Vec::new();
    for &c in &present {
        if truths[c] == n {
            continue;
        }
        let scores: Vec<f64> = records.iter().map(|r| r.probabilities[c]).collect();
        let ranks = average_ranks(&scores);
        let pos = truths[c] as f64;
        let neg = (n - truths[c]) as f64;
        let rank_sum: f64 = records
            .iter()
            .zip(&ranks)
            .filter(|(r, _)| r.true_label == c)
            .map(|(_, k)| k)
            .sum();
        aucs.push((rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg));
    }
    let auroc = if aucs.is_empty() {
        0.5
    } else {
        aucs.iter().sum::<f64>() / aucs.len() as f64
    };

    let nll = -records
        .iter()
        .map(|r| libm::log(r.probabilities[r.true_label].max(NLL_FLOOR)))
        .sum::<f64>()
        / n as f64;

    Ok(MetricReport {
        acc,
        balacc,
        f1_macro,
        auroc,
        nll,
    })
}
