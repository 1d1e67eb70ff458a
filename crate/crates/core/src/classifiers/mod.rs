//! Vector classifiers, the 1-NN DTW benchmark and the composed pipelines.

pub mod dtw;
pub mod freshprince;
pub mod pipeline;
pub mod ridge;
pub mod rotation_forest;
pub mod tree;

pub use dtw::{dtw_distance, fit_knn_dtw, loo_accuracy, KnnDtwModel, DTW_GRID_STEPS};
pub use freshprince::{fit_freshprince, predict_freshprince, FreshPrinceModel};
pub use pipeline::{ClassifierOptions, ClassifierSpec, Head, InputSchema, Model, TrainedClassifier};
pub use ridge::{fit_ridge_cv, loo_squared_error, RidgeModel, RidgeRegression, RIDGE_ALPHAS};
pub use rotation_forest::{
    fit_rotation_forest, predict_forest, RotationForestConfig, RotationForestModel, RotationMember,
};
pub use tree::{fit_tree, DecisionTreeModel, Node};

/// Index of the largest entry; ties go to the lowest index.
pub fn argmax(p: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in p.iter().enumerate() {
        if *v > p[best] {
            best = i;
        }
    }
    best
}
