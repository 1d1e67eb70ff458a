//! Time series classification pipelines built from unsupervised series-to-vector
//! transforms and vector classifiers.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the experiment
//! runner and the command line live in the `freshprince` companion crate.
//!
//! * [`dataset`] holds labelled equal-length univariate collections and the
//!   stratified resampling used for repeated train/test experiments.
//! * [`features`] has the transforms: summary statistics, the 22-feature bank,
//!   the comprehensive Fresh bank, random intervals, PCA and path signatures.
//! * [`classifiers`] has the decision tree, rotation forest, ridge with
//!   leave-one-out alpha selection, 1-NN DTW and the FreshPRINCE pipeline.
//! * [`evaluation`] has the metrics, the Wilcoxon/Holm comparison machinery
//!   and the critical difference diagram renderer.
#![no_std]
// NaN-aware comparisons and index loops over several arrays read better as written.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classifiers;
pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod exec;
pub mod features;
pub mod linalg;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
