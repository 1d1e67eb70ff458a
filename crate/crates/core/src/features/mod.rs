//! Unsupervised series-to-vector transforms.
//!
//! Bank functions ([`basic_stats`], [`c22_bank`], [`fresh_bank`]) return raw
//! values in which an undefined feature (for example the autocorrelation of a
//! constant series) is `NaN`. Building a [`FeatureMatrix`] replaces every
//! non-finite entry with 0 and counts the replacements.

mod basic;
mod c22;
mod fresh;
mod intervals;
mod matrix;
pub(crate) mod pca;
mod signature;
pub mod spectral;
mod transform;

pub use basic::{basic_stats, BASIC_NAMES, BASIC_WIDTH};
pub use c22::{c22_bank, C22_MIN_LENGTH, C22_NAMES, C22_WIDTH};
pub use fresh::{fresh_bank, fresh_feature_names, FRESH_FEATURE_COUNT, FRESH_MIN_LENGTH};
pub use intervals::{interval_transform, sample_intervals, Interval, IntervalBank, IntervalSet};
pub use matrix::FeatureMatrix;
pub use pca::{apply_pca, fit_pca, PcaModel};
pub use signature::{
    signature_transform, signature_width, truncated_signature, SignatureConfig, SignatureOutput,
};
pub use transform::{FittedTransform, TransformKind, TransformOptions};
