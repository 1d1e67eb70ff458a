//! Run settings: command-line flags override a TOML file, which overrides
//! the built-in defaults.

use std::path::{Path, PathBuf};

use freshprince_core::classifiers::{ClassifierOptions, ClassifierSpec};
use serde::Deserialize;

use crate::error::CliError;

/// Every setting as an optional value; used for both the TOML file and the
/// flags of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub data_dir: Option<PathBuf>,
    pub datasets: Option<Vec<String>>,
    pub classifiers: Option<Vec<String>>,
    pub transform: Option<String>,
    pub resamples: Option<u64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub overwrite: Option<bool>,
    pub alpha: Option<f64>,
    pub external_results: Option<PathBuf>,
    pub record_timings: Option<bool>,
    pub n_trees: Option<usize>,
    pub group_size: Option<usize>,
    pub sample_fraction: Option<f64>,
    pub n_intervals: Option<usize>,
    pub pca_variance: Option<f64>,
    pub dtw_window: Option<f64>,
    pub signature_depth: Option<usize>,
    pub signature_window_depth: Option<usize>,
}

macro_rules! prefer {
    ($a:ident, $b:ident; $($f:ident),*) => {
        Settings { $($f: $a.$f.or($b.$f)),* }
    };
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        let a = self;
        let b = fallback;
        prefer!(a, b; data_dir, datasets, classifiers, transform, resamples, seed, threads, out, overwrite,
            alpha, external_results, record_timings, n_trees, group_size, sample_fraction, n_intervals,
            pca_variance, dtw_window, signature_depth, signature_window_depth)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn threads(&self) -> Result<usize, CliError> {
        match self.threads {
            Some(0) => Err(CliError::usage("--threads must be at least 1")),
            Some(n) => Ok(n),
            None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }

    pub fn resamples(&self) -> Result<u64, CliError> {
        match self.resamples.unwrap_or(1) {
            0 => Err(CliError::usage("--resamples must be at least 1")),
            n => Ok(n),
        }
    }

    pub fn alpha(&self) -> Result<f64, CliError> {
        let a = self.alpha.unwrap_or(freshprince_core::evaluation::DEFAULT_ALPHA);
        if a > 0.0 && a < 1.0 {
            Ok(a)
        } else {
            Err(CliError::usage("--alpha must lie in (0, 1)"))
        }
    }

    pub fn classifier_options(&self) -> Result<ClassifierOptions, CliError> {
        let mut o = ClassifierOptions::default();
        if let Some(v) = self.n_trees {
            o.forest.n_trees = v;
        }
        if let Some(v) = self.group_size {
            o.forest.group_size = v;
        }
        if let Some(v) = self.sample_fraction {
            o.forest.sample_fraction = v;
        }
        if let Some(v) = self.n_intervals {
            o.transform.n_intervals = v;
        }
        if let Some(v) = self.pca_variance {
            o.transform.pca_variance = v;
        }
        if let Some(v) = self.signature_depth {
            o.transform.signature.truncation_depth = v;
        }
        if let Some(v) = self.signature_window_depth {
            o.transform.signature.window_depth = v;
        }
        o.dtw_window = self.dtw_window;
        if o.forest.n_trees == 0 || o.forest.group_size == 0 {
            return Err(CliError::usage("--n-trees and --group-size must be at least 1"));
        }
        if !(o.forest.sample_fraction > 0.0 && o.forest.sample_fraction <= 1.0) {
            return Err(CliError::usage("--sample-fraction must lie in (0, 1]"));
        }
        if !(o.transform.pca_variance > 0.0 && o.transform.pca_variance <= 1.0) {
            return Err(CliError::usage("--pca-variance must lie in (0, 1]"));
        }
        if o.transform.n_intervals == 0 || o.transform.signature.truncation_depth == 0 {
            return Err(CliError::usage("--n-intervals and --signature-depth must be at least 1"));
        }
        if o.dtw_window.is_some_and(|w| !(0.0..=1.0).contains(&w)) {
            return Err(CliError::usage("--dtw-window must lie in [0, 1]"));
        }
        Ok(o)
    }

    pub fn classifier_specs(&self) -> Result<Vec<ClassifierSpec>, CliError> {
        let names = self.classifiers.clone().unwrap_or_else(|| vec!["freshprince".into()]);
        let mut specs: Vec<ClassifierSpec> = Vec::new();
        for n in names {
            let spec = parse_classifier(&n)?;
            if !specs.contains(&spec) {
                specs.push(spec);
            }
        }
        Ok(specs)
    }
}

pub fn parse_classifier(name: &str) -> Result<ClassifierSpec, CliError> {
    ClassifierSpec::parse(name).ok_or_else(|| {
        let valid: Vec<String> = ClassifierSpec::registered().iter().map(|s| s.name()).collect();
        CliError::usage(format!("unknown classifier {name:?}; valid names: {}", valid.join(", ")))
    })
}

/// Expands a `--datasets` value: a comma list, or `@path` naming a file with
/// names separated by commas or newlines.
pub fn expand_datasets(values: &[String]) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for v in values {
        if let Some(path) = v.strip_prefix('@') {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read dataset list {path}: {e}")))?;
            out.extend(
                text.split([',', '\n'])
                    .map(str::trim)
                    .filter(|s| !s.is_empty() && !s.starts_with('#'))
                    .map(str::to_string),
            );
        } else {
            out.extend(v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::to_string));
        }
    }
    Ok(out)
}
