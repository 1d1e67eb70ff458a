//! The closed registry of classifiers and a uniform trained-model wrapper.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::dtw::{fit_knn_dtw, KnnDtwModel};
use super::freshprince::{fit_freshprince, predict_freshprince, FreshPrinceModel};
use super::ridge::{fit_ridge_cv, RidgeModel};
use super::rotation_forest::{fit_rotation_forest, predict_forest, RotationForestConfig, RotationForestModel};
use crate::dataset::TimeSeriesDataset;
use crate::exec::Executor;
use crate::features::{FeatureMatrix, FittedTransform, TransformKind, TransformOptions};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Vector classifier placed after a transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Head {
    RotF,
    RidgeCv,
}

impl Head {
    pub fn name(self) -> &'static str {
        match self {
            Head::RotF => "rotf",
            Head::RidgeCv => "ridgecv",
        }
    }
}

/// A registered classifier: `freshprince`, `rotf`, `ridgecv`, `dtw1nn`, or
/// `<transform>+rotf` / `<transform>+ridgecv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifierSpec {
    FreshPrince,
    /// A vector classifier on raw values or on a supplied feature matrix.
    Vector(Head),
    Dtw1nn,
    Pipeline(TransformKind, Head),
}

impl ClassifierSpec {
    pub fn name(&self) -> String {
        match self {
            ClassifierSpec::FreshPrince => "freshprince".into(),
            ClassifierSpec::Vector(h) => h.name().into(),
            ClassifierSpec::Dtw1nn => "dtw1nn".into(),
            ClassifierSpec::Pipeline(t, h) => format!("{}+{}", t.name(), h.name()),
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        let name = name.trim();
        match name {
            "freshprince" => return Some(ClassifierSpec::FreshPrince),
            "rotf" => return Some(ClassifierSpec::Vector(Head::RotF)),
            "ridgecv" => return Some(ClassifierSpec::Vector(Head::RidgeCv)),
            "dtw1nn" => return Some(ClassifierSpec::Dtw1nn),
            _ => {}
        }
        let (t, h) = name.split_once('+')?;
        let head = match h {
            "rotf" => Head::RotF,
            "ridgecv" => Head::RidgeCv,
            _ => return None,
        };
        Some(ClassifierSpec::Pipeline(TransformKind::from_name(t)?, head))
    }

    /// Every accepted name, in a fixed order.
    pub fn registered() -> Vec<Self> {
        let mut out = Vec::from([
            ClassifierSpec::FreshPrince,
            ClassifierSpec::Vector(Head::RotF),
            ClassifierSpec::Vector(Head::RidgeCv),
            ClassifierSpec::Dtw1nn,
        ]);
        for t in TransformKind::ALL {
            out.push(ClassifierSpec::Pipeline(t, Head::RotF));
            out.push(ClassifierSpec::Pipeline(t, Head::RidgeCv));
        }
        out
    }

    /// Whether the classifier can be trained on a feature matrix directly.
    pub fn accepts_features(&self) -> bool {
        matches!(self, ClassifierSpec::Vector(_))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassifierOptions {
    pub forest: RotationForestConfig,
    pub transform: TransformOptions,
    /// Fixed DTW window fraction; tuned by leave-one-out when `None`.
    pub dtw_window: Option<f64>,
}

impl ClassifierOptions {
    /// The hyperparameters that matter to `spec`, as one line of text.
    pub fn describe(&self, spec: &ClassifierSpec) -> String {
        let forest = format!(
            "n_trees={} group_size={} sample_fraction={}",
            self.forest.n_trees, self.forest.group_size, self.forest.sample_fraction
        );
        let transform = |t: &TransformKind| match t {
            TransformKind::IntervalsBasic | TransformKind::IntervalsC22 => {
                format!(" n_intervals={}", self.transform.n_intervals)
            }
            TransformKind::Pca => format!(" pca_variance={}", self.transform.pca_variance),
            TransformKind::Signature => {
                let s = &self.transform.signature;
                format!(
                    " truncation_depth={} window_depth={} basepoint={} time_augment={}",
                    s.truncation_depth, s.window_depth, s.basepoint, s.time_augment
                )
            }
            _ => String::new(),
        };
        match spec {
            ClassifierSpec::FreshPrince | ClassifierSpec::Vector(Head::RotF) => forest,
            ClassifierSpec::Vector(Head::RidgeCv) => "alphas=1e-3..1e3".into(),
            ClassifierSpec::Dtw1nn => match self.dtw_window {
                Some(w) => format!("window={w}"),
                None => "window=tuned".into(),
            },
            ClassifierSpec::Pipeline(t, Head::RotF) => format!("{forest}{}", transform(t)),
            ClassifierSpec::Pipeline(t, Head::RidgeCv) => format!("alphas=1e-3..1e3{}", transform(t)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Model {
    FreshPrince(FreshPrinceModel),
    Forest(RotationForestModel),
    Ridge(RidgeModel),
    Dtw(KnnDtwModel),
}

/// What the model was trained on, checked again at prediction time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InputSchema {
    Series { length: usize },
    Features { names: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedClassifier {
    pub spec: ClassifierSpec,
    pub class_names: Vec<String>,
    pub input: InputSchema,
    pub transform: Option<FittedTransform>,
    pub model: Model,
}

/// Transform state is seeded away from the classifier's own streams.
fn transform_seed(seed: u64) -> u64 {
    seed ^ 0x5EED_7A45_F0E4_0000
}

fn raw_matrix(ds: &TimeSeriesDataset) -> Matrix {
    Matrix::from_vec(ds.n_cases(), ds.series_length(), ds.values().to_vec())
}

fn fit_head<E: Executor>(
    head: Head,
    x: &Matrix,
    y: &[usize],
    n_classes: usize,
    options: &ClassifierOptions,
    seed: u64,
    exec: &E,
) -> Result<Model> {
    Ok(match head {
        Head::RotF => Model::Forest(fit_rotation_forest(x, y, n_classes, &options.forest, seed, exec)?),
        Head::RidgeCv => Model::Ridge(fit_ridge_cv(x, y, n_classes)?),
    })
}

fn predict_head(model: &Model, x: &Matrix) -> Result<Vec<Vec<f64>>> {
    match model {
        Model::Forest(m) => predict_forest(m, x),
        Model::Ridge(m) => m.predict_proba(x),
        _ => Err(Error::InvalidConfig("model does not take vector input".into())),
    }
}

impl TrainedClassifier {
    /// Trains `spec` on a series dataset.
    pub fn fit<E: Executor>(
        spec: ClassifierSpec,
        train: &TimeSeriesDataset,
        options: &ClassifierOptions,
        seed: u64,
        exec: &E,
    ) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let c = train.n_classes();
        let mut transform = None;
        let model = match spec {
            ClassifierSpec::FreshPrince => Model::FreshPrince(fit_freshprince(train, &options.forest, seed, exec)?),
            ClassifierSpec::Vector(head) => fit_head(head, &raw_matrix(train), train.labels(), c, options, seed, exec)?,
            ClassifierSpec::Dtw1nn => Model::Dtw(match options.dtw_window {
                Some(w) => KnnDtwModel::with_window(train.clone(), w)?,
                None => fit_knn_dtw(train, exec)?,
            }),
            ClassifierSpec::Pipeline(kind, head) => {
                let t = FittedTransform::fit(kind, train, transform_seed(seed), &options.transform)?;
                let fm = t.apply(train, exec)?;
                transform = Some(t);
                fit_head(head, fm.values(), train.labels(), c, options, seed, exec)?
            }
        };
        Ok(Self {
            spec,
            class_names: train.class_names().to_vec(),
            input: InputSchema::Series {
                length: train.series_length(),
            },
            transform,
            model,
        })
    }

    /// Trains a vector classifier (`rotf` or `ridgecv`) on precomputed features.
    pub fn fit_features<E: Executor>(
        spec: ClassifierSpec,
        features: &FeatureMatrix,
        labels: &[usize],
        class_names: Vec<String>,
        options: &ClassifierOptions,
        seed: u64,
        exec: &E,
    ) -> Result<Self> {
        let ClassifierSpec::Vector(head) = spec else {
            return Err(Error::InvalidConfig(format!(
                "{} cannot be trained on a feature matrix",
                spec.name()
            )));
        };
        if features.n_rows() == 0 {
            return Err(Error::EmptyInput);
        }
        let model = fit_head(head, features.values(), labels, class_names.len(), options, seed, exec)?;
        Ok(Self {
            spec,
            class_names,
            input: InputSchema::Features {
                names: features.names().to_vec(),
            },
            transform: None,
            model,
        })
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    /// Class probability rows for a series dataset.
    pub fn predict_proba<E: Executor>(&self, test: &TimeSeriesDataset, exec: &E) -> Result<Vec<Vec<f64>>> {
        let length = match &self.input {
            InputSchema::Series { length } => *length,
            InputSchema::Features { names } => {
                return Err(Error::ShapeMismatch {
                    expected: names.len(),
                    got: test.series_length(),
                })
            }
        };
        if !test.is_empty() && test.series_length() != length {
            return Err(Error::ShapeMismatch {
                expected: length,
                got: test.series_length(),
            });
        }
        match (&self.model, &self.transform) {
            (Model::FreshPrince(m), _) => predict_freshprince(m, test, exec),
            (Model::Dtw(m), _) => m.predict_proba(test, exec),
            (m, Some(t)) => predict_head(m, t.apply(test, exec)?.values()),
            (m, None) => predict_head(m, &raw_matrix(test)),
        }
    }

    /// Class probability rows for a feature matrix; its width must match training.
    pub fn predict_features_proba(&self, features: &FeatureMatrix) -> Result<Vec<Vec<f64>>> {
        match &self.input {
            InputSchema::Features { names } if names.len() == features.n_features() => {
                predict_head(&self.model, features.values())
            }
            InputSchema::Features { names } => Err(Error::ShapeMismatch {
                expected: names.len(),
                got: features.n_features(),
            }),
            InputSchema::Series { length } => Err(Error::ShapeMismatch {
                expected: *length,
                got: features.n_features(),
            }),
        }
    }
}
