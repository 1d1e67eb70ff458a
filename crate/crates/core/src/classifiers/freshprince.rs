//! The Fresh feature bank followed by a rotation forest.

use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::rotation_forest::{fit_rotation_forest, predict_forest, RotationForestConfig, RotationForestModel};
use crate::dataset::TimeSeriesDataset;
use crate::exec::Executor;
use crate::features::{fresh_feature_names, FeatureMatrix, FittedTransform};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreshPrinceModel {
    pub feature_names: Vec<String>,
    pub series_length: usize,
    pub forest: RotationForestModel,
}

fn fresh_features<E: Executor>(ds: &TimeSeriesDataset, exec: &E) -> Result<FeatureMatrix> {
    FittedTransform::Fresh.apply(ds, exec)
}

pub fn fit_freshprince<E: Executor>(
    train: &TimeSeriesDataset,
    config: &RotationForestConfig,
    seed: u64,
    exec: &E,
) -> Result<FreshPrinceModel> {
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let features = fresh_features(train, exec)?;
    let forest = fit_rotation_forest(features.values(), train.labels(), train.n_classes(), config, seed, exec)?;
    Ok(FreshPrinceModel {
        feature_names: fresh_feature_names(),
        series_length: train.series_length(),
        forest,
    })
}

pub fn predict_freshprince<E: Executor>(
    model: &FreshPrinceModel,
    test: &TimeSeriesDataset,
    exec: &E,
) -> Result<Vec<Vec<f64>>> {
    if !test.is_empty() && test.series_length() != model.series_length {
        return Err(Error::ShapeMismatch {
            expected: model.series_length,
            got: test.series_length(),
        });
    }
    let features = fresh_features(test, exec)?;
    predict_forest(&model.forest, features.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;
    use crate::features::{fresh_bank, FRESH_FEATURE_COUNT};
    use alloc::string::ToString;
    use alloc::vec;

    fn toy() -> TimeSeriesDataset {
        let series = (0..12)
            .map(|i| {
                (0..24)
                    .map(|t| {
                        let f = if i % 2 == 0 { 0.3 } else { 0.9 };
                        libm::sin(f * t as f64 + i as f64 * 0.1)
                    })
                    .collect()
            })
            .collect();
        let labels: Vec<&str> = (0..12).map(|i| if i % 2 == 0 { "slow" } else { "fast" }).collect();
        TimeSeriesDataset::new("toy", series, &labels, vec!["slow".to_string(), "fast".to_string()]).unwrap()
    }

    #[test]
    fn equals_manual_composition() {
        let ds = toy();
        let cfg = RotationForestConfig {
            n_trees: 5,
            ..Default::default()
        };
        let model = fit_freshprince(&ds, &cfg, 11, &Sequential).unwrap();
        assert_eq!(model.forest.n_features(), FRESH_FEATURE_COUNT);
        let rows: Vec<Vec<f64>> = ds.iter_series().map(|s| fresh_bank(s).unwrap().to_vec()).collect();
        let fm = FeatureMatrix::new(fresh_feature_names(), &rows).unwrap();
        let manual = predict_forest(&model.forest, fm.values()).unwrap();
        assert_eq!(predict_freshprince(&model, &ds, &Sequential).unwrap(), manual);
        let again = fit_freshprince(&ds, &cfg, 11, &Sequential).unwrap();
        assert_eq!(model, again);
    }

    #[test]
    fn rejects_other_lengths() {
        let ds = toy();
        let cfg = RotationForestConfig {
            n_trees: 2,
            ..Default::default()
        };
        let model = fit_freshprince(&ds, &cfg, 0, &Sequential).unwrap();
        let other = TimeSeriesDataset::new("o", vec![vec![0.0; 30]], &["slow"], ["slow".to_string()]).unwrap();
        assert!(matches!(
            predict_freshprince(&model, &other, &Sequential),
            Err(Error::ShapeMismatch { .. })
        ));
    }
}
