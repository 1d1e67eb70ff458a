use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::pca::fit_pca_matrix;
use super::{
    basic_stats, c22_bank, fresh_bank, fresh_feature_names, interval_transform, sample_intervals,
    signature_transform, FeatureMatrix, IntervalBank, IntervalSet, PcaModel, SignatureConfig,
    BASIC_NAMES, C22_NAMES,
};
use crate::dataset::TimeSeriesDataset;
use crate::exec::Executor;
use crate::linalg::Matrix;
use crate::{Error, Result};

/// The registered series-to-vector transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransformKind {
    Summary,
    C22,
    Fresh,
    IntervalsBasic,
    IntervalsC22,
    Pca,
    Signature,
}

impl TransformKind {
    pub const ALL: [TransformKind; 7] = [
        TransformKind::Summary,
        TransformKind::C22,
        TransformKind::Fresh,
        TransformKind::IntervalsBasic,
        TransformKind::IntervalsC22,
        TransformKind::Pca,
        TransformKind::Signature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Summary => "summary",
            TransformKind::C22 => "c22",
            TransformKind::Fresh => "fresh",
            TransformKind::IntervalsBasic => "intervals-basic",
            TransformKind::IntervalsC22 => "intervals-c22",
            TransformKind::Pca => "pca",
            TransformKind::Signature => "signature",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Hyperparameters of the stateful transforms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformOptions {
    pub n_intervals: usize,
    /// PCA keeps the fewest components reaching this share of the variance.
    pub pca_variance: f64,
    pub signature: SignatureConfig,
}

impl Default for TransformOptions {
    fn default() -> Self {
        Self {
            n_intervals: 100,
            pca_variance: 0.95,
            signature: SignatureConfig::default(),
        }
    }
}

/// Trained state of a transform, applied identically to train and test data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FittedTransform {
    Summary,
    C22,
    Fresh,
    Intervals { set: IntervalSet, bank: IntervalBank },
    Pca { model: PcaModel, series_length: usize },
    Signature { config: SignatureConfig, series_length: usize },
}

impl FittedTransform {
    pub fn fit(
        kind: TransformKind,
        train: &TimeSeriesDataset,
        seed: u64,
        options: &TransformOptions,
    ) -> Result<Self> {
        let length = train.series_length();
        Ok(match kind {
            TransformKind::Summary => FittedTransform::Summary,
            TransformKind::C22 => FittedTransform::C22,
            TransformKind::Fresh => FittedTransform::Fresh,
            TransformKind::IntervalsBasic | TransformKind::IntervalsC22 => {
                let bank = if kind == TransformKind::IntervalsBasic {
                    IntervalBank::Basic
                } else {
                    IntervalBank::C22
                };
                FittedTransform::Intervals {
                    set: sample_intervals(length, options.n_intervals, seed)?,
                    bank,
                }
            }
            TransformKind::Pca => {
                let x = Matrix::from_vec(train.n_cases(), length, train.values().to_vec());
                let max = train.n_cases().saturating_sub(1).min(length);
                let mut model = fit_pca_matrix(&x, max.max(1))?;
                let keep = components_for_share(&model, options.pca_variance);
                truncate_components(&mut model, keep);
                FittedTransform::Pca {
                    model,
                    series_length: length,
                }
            }
            TransformKind::Signature => FittedTransform::Signature {
                config: options.signature,
                series_length: length,
            },
        })
    }

    pub fn kind(&self) -> TransformKind {
        match self {
            FittedTransform::Summary => TransformKind::Summary,
            FittedTransform::C22 => TransformKind::C22,
            FittedTransform::Fresh => TransformKind::Fresh,
            FittedTransform::Intervals { bank: IntervalBank::Basic, .. } => TransformKind::IntervalsBasic,
            FittedTransform::Intervals { bank: IntervalBank::C22, .. } => TransformKind::IntervalsC22,
            FittedTransform::Pca { .. } => TransformKind::Pca,
            FittedTransform::Signature { .. } => TransformKind::Signature,
        }
    }

    pub fn apply<E: Executor>(&self, ds: &TimeSeriesDataset, exec: &E) -> Result<FeatureMatrix> {
        match self {
            FittedTransform::Summary => per_series(ds, exec, &BASIC_NAMES, |x| Ok(basic_stats(x)?.to_vec())),
            FittedTransform::C22 => per_series(ds, exec, &C22_NAMES, |x| Ok(c22_bank(x)?.to_vec())),
            FittedTransform::Fresh => {
                let rows = exec.map(ds.n_cases(), |i| fresh_bank(ds.series(i)).map(|r| r.to_vec()));
                let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
                FeatureMatrix::new(fresh_feature_names(), &rows)
            }
            FittedTransform::Intervals { set, bank } => interval_transform(ds, set, *bank, exec),
            FittedTransform::Pca { model, series_length } => {
                check_length(ds, *series_length)?;
                let rows = exec.map(ds.n_cases(), |i| model.project(ds.series(i)));
                FeatureMatrix::new((1..=model.k()).map(|c| format!("pc{c}")).collect(), &rows)
            }
            FittedTransform::Signature { config, series_length } => {
                check_length(ds, *series_length)?;
                Ok(signature_transform(ds, config, exec)?.features)
            }
        }
    }
}

fn check_length(ds: &TimeSeriesDataset, expected: usize) -> Result<()> {
    if !ds.is_empty() && ds.series_length() != expected {
        return Err(Error::ShapeMismatch {
            expected,
            got: ds.series_length(),
        });
    }
    Ok(())
}

fn per_series<E, F>(ds: &TimeSeriesDataset, exec: &E, names: &[&str], f: F) -> Result<FeatureMatrix>
where
    E: Executor,
    F: Fn(&[f64]) -> Result<Vec<f64>> + Sync + Send,
{
    let rows = exec.map(ds.n_cases(), |i| f(ds.series(i)));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    FeatureMatrix::new(names.iter().map(|s| String::from(*s)).collect(), &rows)
}

fn components_for_share(model: &PcaModel, share: f64) -> usize {
    let total = model.total_variance;
    if !(total > 0.0) {
        return 1;
    }
    let mut acc = 0.0;
    for (i, v) in model.explained_variance.iter().enumerate() {
        acc += v;
        if acc >= share * total {
            return i + 1;
        }
    }
    model.k()
}

fn truncate_components(model: &mut PcaModel, k: usize) {
    let p = model.loadings.rows();
    let mut loadings = Matrix::zeros(p, k);
    for j in 0..p {
        loadings.row_mut(j).copy_from_slice(&model.loadings.row(j)[..k]);
    }
    model.loadings = loadings;
    model.explained_variance.truncate(k);
}
