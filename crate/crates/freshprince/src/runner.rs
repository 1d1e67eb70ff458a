//! Dataset × resample × classifier experiments written as results files.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use freshprince_core::classifiers::{argmax, ClassifierOptions, ClassifierSpec, TrainedClassifier};
use freshprince_core::dataset::{stratified_resample, TimeSeriesDataset};
use freshprince_core::evaluation::PredictionRecord;
use freshprince_core::exec::Executor;

use crate::exec::RayonExecutor;
use crate::results::{results_path, ResultsFile};
use crate::tsfile::read_ts_path;

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub data_dir: PathBuf,
    pub datasets: Vec<String>,
    pub classifiers: Vec<ClassifierSpec>,
    pub n_resamples: u64,
    pub base_seed: u64,
    pub out_dir: PathBuf,
    pub overwrite: bool,
    /// When false, fit and predict times are written as 0 so reruns are
    /// byte-identical.
    pub record_timings: bool,
    pub options: ClassifierOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub enum JobStatus {
    Written { accuracy: f64 },
    Skipped,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobOutcome {
    pub dataset: String,
    pub classifier: String,
    pub resample_id: u64,
    pub path: PathBuf,
    pub status: JobStatus,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentSummary {
    pub jobs: Vec<JobOutcome>,
    /// Datasets that could not be loaded, with the reason.
    pub dataset_errors: Vec<(String, String)>,
}

impl ExperimentSummary {
    pub fn count(&self, f: impl Fn(&JobStatus) -> bool) -> usize {
        self.jobs.iter().filter(|j| f(&j.status)).count()
    }

    pub fn written(&self) -> usize {
        self.count(|s| matches!(s, JobStatus::Written { .. }))
    }

    pub fn skipped(&self) -> usize {
        self.count(|s| matches!(s, JobStatus::Skipped))
    }

    pub fn failed(&self) -> usize {
        self.count(|s| matches!(s, JobStatus::Failed(_)))
    }

    /// Datasets with at least one written or skipped (already present) job.
    pub fn succeeded_datasets(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .jobs
            .iter()
            .filter(|j| !matches!(j.status, JobStatus::Failed(_)))
            .map(|j| j.dataset.clone())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// `<data_dir>/<name>/<name>_TRAIN.ts` and `_TEST.ts`.
pub fn load_split(data_dir: &Path, name: &str) -> anyhow::Result<(TimeSeriesDataset, TimeSeriesDataset)> {
    let dir = data_dir.join(name);
    let train = read_ts_path(&dir.join(format!("{name}_TRAIN.ts")))?.with_name(name);
    let test = read_ts_path(&dir.join(format!("{name}_TEST.ts")))?.with_name(name);
    Ok((train, test))
}

/// Fits on `train`, predicts `test` and packages the results file.
#[allow(clippy::too_many_arguments)]
pub fn evaluate(
    spec: ClassifierSpec,
    train: &TimeSeriesDataset,
    test: &TimeSeriesDataset,
    options: &ClassifierOptions,
    seed: u64,
    resample_id: u64,
    record_timings: bool,
    exec: &impl Executor,
) -> anyhow::Result<ResultsFile> {
    let start = Instant::now();
    let model = TrainedClassifier::fit(spec, train, options, seed, exec)?;
    let fit_ms = start.elapsed().as_millis() as u64;
    let start = Instant::now();
    let probabilities = model.predict_proba(test, exec)?;
    let predict_ms = start.elapsed().as_millis() as u64;
    let (fit_time_ms, predict_time_ms) = if record_timings { (fit_ms, predict_ms) } else { (0, 0) };
    Ok(package(
        test.name(),
        test.labels(),
        &spec.name(),
        format!("{} seed={seed}", options.describe(&spec)),
        resample_id,
        probabilities,
        fit_time_ms,
        predict_time_ms,
    ))
}

/// Builds a results file from probability rows and true class indices in
/// the same class order.
#[allow(clippy::too_many_arguments)]
pub fn package(
    dataset: &str,
    truth: &[usize],
    classifier: &str,
    parameters: String,
    resample_id: u64,
    probabilities: Vec<Vec<f64>>,
    fit_time_ms: u64,
    predict_time_ms: u64,
) -> ResultsFile {
    let records: Vec<PredictionRecord> = probabilities
        .into_iter()
        .enumerate()
        .map(|(i, p)| PredictionRecord {
            true_label: truth[i],
            predicted_label: argmax(&p),
            probabilities: p,
            fit_time_ms: fit_time_ms as f64,
            predict_time_ms: predict_time_ms as f64,
        })
        .collect();
    let correct = records.iter().filter(|r| r.true_label == r.predicted_label).count();
    ResultsFile {
        dataset: dataset.to_string(),
        classifier: classifier.to_string(),
        resample_id,
        parameters,
        accuracy: correct as f64 / records.len().max(1) as f64,
        fit_time_ms,
        predict_time_ms,
        records,
    }
}

/// Runs every job, skipping existing results unless `overwrite` is set.
/// Jobs run concurrently on `exec`; each job's seed is `base_seed + resample_id`.
pub fn run_experiment(cfg: &ExperimentConfig, exec: &RayonExecutor) -> ExperimentSummary {
    let mut summary = ExperimentSummary::default();
    let mut loaded = Vec::new();
    for name in &cfg.datasets {
        match load_split(&cfg.data_dir, name) {
            Ok(pair) => loaded.push((name.clone(), pair)),
            Err(e) => {
                log::warn!("{name}: {e:#}");
                summary.dataset_errors.push((name.clone(), format!("{e:#}")));
            }
        }
    }
    let mut jobs = Vec::new();
    for (d, _) in loaded.iter().enumerate() {
        for r in 0..cfg.n_resamples {
            for spec in &cfg.classifiers {
                jobs.push((d, r, *spec));
            }
        }
    }
    summary.jobs = exec.map(jobs.len(), |j| {
        let (d, resample_id, spec) = jobs[j];
        let (name, (train, test)) = &loaded[d];
        let classifier = spec.name();
        let path = results_path(&cfg.out_dir, &classifier, name, resample_id);
        let status = if path.exists() && !cfg.overwrite {
            JobStatus::Skipped
        } else {
            let run = || -> anyhow::Result<f64> {
                let pair = stratified_resample(train, test, resample_id).context("resampling")?;
                let seed = cfg.base_seed.wrapping_add(resample_id);
                let file = evaluate(
                    spec,
                    &pair.train,
                    &pair.test,
                    &cfg.options,
                    seed,
                    resample_id,
                    cfg.record_timings,
                    exec,
                )?;
                file.write(&path)?;
                Ok(file.accuracy)
            };
            match run() {
                Ok(accuracy) => JobStatus::Written { accuracy },
                Err(e) => {
                    log::warn!("{name} {classifier} resample {resample_id}: {e:#}");
                    JobStatus::Failed(format!("{e:#}"))
                }
            }
        };
        JobOutcome {
            dataset: name.clone(),
            classifier,
            resample_id,
            path,
            status,
        }
    });
    summary
}
