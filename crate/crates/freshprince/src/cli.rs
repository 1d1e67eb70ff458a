//! Command-line interface: `transform`, `fit`, `predict`, `benchmark` and
//! `compare`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use freshprince_core::classifiers::{InputSchema, TrainedClassifier};
use freshprince_core::evaluation::{compute_metrics, MetricReport};
use freshprince_core::features::{FittedTransform, TransformKind};
use freshprince_core::Error as CoreError;

use crate::compare::{collect_results, common_table, compare_table, read_external, write_report};
use crate::config::{expand_datasets, parse_classifier, Settings};
use crate::error::{classify, CliError, ExitCode};
use crate::exec::RayonExecutor;
use crate::feature_csv::{read_feature_path, write_feature_csv};
use crate::model_file::ModelFile;
use crate::results::ResultsFile;
use crate::runner::{package, run_experiment, ExperimentConfig, JobStatus};
use crate::tsfile::read_ts_path;

#[derive(Debug, Parser)]
#[command(name = "freshprince", version, about = "Time series classification with feature pipelines")]
pub struct Cli {
    /// TOML file of default settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, env = "FRESHPRINCE_THREADS")]
    pub threads: Option<usize>,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a transform's feature matrix as CSV.
    Transform(TransformArgs),
    /// Train a classifier and save it.
    Fit(FitArgs),
    /// Apply a saved classifier and write a results file.
    Predict(PredictArgs),
    /// Run classifiers over datasets and resamples.
    Benchmark(BenchmarkArgs),
    /// Rank classifiers, test pairwise differences and draw a CD diagram.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct HyperArgs {
    #[arg(long)]
    pub n_trees: Option<usize>,
    #[arg(long)]
    pub group_size: Option<usize>,
    #[arg(long)]
    pub sample_fraction: Option<f64>,
    #[arg(long)]
    pub n_intervals: Option<usize>,
    #[arg(long)]
    pub pca_variance: Option<f64>,
    /// Fixed DTW window fraction; tuned by leave-one-out when absent.
    #[arg(long)]
    pub dtw_window: Option<f64>,
    #[arg(long)]
    pub signature_depth: Option<usize>,
    #[arg(long)]
    pub signature_window_depth: Option<usize>,
}

impl HyperArgs {
    fn settings(&self) -> Settings {
        Settings {
            n_trees: self.n_trees,
            group_size: self.group_size,
            sample_fraction: self.sample_fraction,
            n_intervals: self.n_intervals,
            pca_variance: self.pca_variance,
            dtw_window: self.dtw_window,
            signature_depth: self.signature_depth,
            signature_window_depth: self.signature_window_depth,
            ..Default::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub transform: Option<String>,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fit stateful transforms on this file instead of the input.
    #[arg(long)]
    pub fit_on: Option<PathBuf>,
    /// Append a `class_label` column.
    #[arg(long)]
    pub with_labels: bool,
    #[command(flatten)]
    pub hyper: HyperArgs,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, alias = "classifiers")]
    pub classifier: Option<String>,
    #[arg(long, conflicts_with = "features", required_unless_present = "features")]
    pub train: Option<PathBuf>,
    /// Feature CSV with a `class_label` column (rotf and ridgecv only).
    #[arg(long)]
    pub features: Option<PathBuf>,
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub hyper: HyperArgs,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, conflicts_with = "features", required_unless_present = "features")]
    pub test: Option<PathBuf>,
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// Results file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Comma-separated names, or `@file`.
    #[arg(long, value_delimiter = ',')]
    pub datasets: Option<Vec<String>>,
    #[arg(long, alias = "classifier", value_delimiter = ',')]
    pub classifiers: Option<Vec<String>>,
    #[arg(long)]
    pub resamples: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub overwrite: bool,
    /// Write zero fit and predict times so reruns are byte-identical.
    #[arg(long)]
    pub no_timings: bool,
    #[command(flatten)]
    pub hyper: HyperArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Root of the results trees (`<classifier>/Predictions/...`).
    #[arg(long)]
    pub results: Option<PathBuf>,
    #[arg(long, alias = "classifier", value_delimiter = ',')]
    pub classifiers: Option<Vec<String>>,
    /// CSV of published accuracies: `dataset,<classifier>,...`.
    #[arg(long)]
    pub external_results: Option<PathBuf>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::Usage as i32 } else { 0 };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).parse_default_env().try_init();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code as i32
        }
    }
}

fn failure(err: impl Into<anyhow::Error>) -> CliError {
    let err = err.into();
    CliError::new(classify(&err), err)
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let global = Settings {
        seed: cli.seed,
        threads: cli.threads,
        ..Default::default()
    };
    match &cli.command {
        Command::Transform(a) => transform(a, global.or(a.hyper.settings()).or(file)),
        Command::Fit(a) => fit(a, global.or(a.hyper.settings()).or(file)),
        Command::Predict(a) => predict(a, global.or(file)),
        Command::Benchmark(a) => {
            let flags = Settings {
                data_dir: a.data_dir.clone(),
                datasets: a.datasets.clone(),
                classifiers: a.classifiers.clone(),
                resamples: a.resamples,
                out: a.out.clone(),
                overwrite: a.overwrite.then_some(true),
                record_timings: a.no_timings.then_some(false),
                ..Default::default()
            };
            benchmark(global.or(flags).or(a.hyper.settings()).or(file))
        }
        Command::Compare(a) => {
            let flags = Settings {
                out: a.out.clone(),
                alpha: a.alpha,
                external_results: a.external_results.clone(),
                classifiers: a.classifiers.clone(),
                ..Default::default()
            };
            compare(a.results.as_deref(), global.or(flags).or(file))
        }
    }
}

fn executor(s: &Settings) -> Result<RayonExecutor, CliError> {
    RayonExecutor::new(s.threads()?).map_err(failure)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| dir.display().to_string()).map_err(failure)?;
            }
            std::fs::write(path, text).with_context(|| path.display().to_string()).map_err(failure)
        }
        None => std::io::stdout().write_all(text.as_bytes()).map_err(failure),
    }
}

fn transform(a: &TransformArgs, s: Settings) -> Result<(), CliError> {
    let name = a
        .transform
        .clone()
        .or(s.transform.clone())
        .ok_or_else(|| CliError::usage("--transform is required"))?;
    let kind = TransformKind::from_name(&name).ok_or_else(|| {
        let valid: Vec<&str> = TransformKind::ALL.iter().map(|k| k.name()).collect();
        CliError::usage(format!("unknown transform {name:?}; valid names: {}", valid.join(", ")))
    })?;
    let options = s.classifier_options()?;
    let exec = executor(&s)?;
    let input = read_ts_path(&a.input).map_err(failure)?;
    let fit_data = match &a.fit_on {
        Some(p) => read_ts_path(p).map_err(failure)?,
        None => input.clone(),
    };
    let fitted = FittedTransform::fit(kind, &fit_data, s.seed(), &options.transform).map_err(failure)?;
    let fm = fitted.apply(&input, &exec).map_err(failure)?;
    if fm.sanitized() > 0 {
        log::info!("{} non-finite feature values replaced by 0", fm.sanitized());
    }
    let labels: Vec<String> = (0..input.n_cases()).map(|i| input.label_name(i).to_string()).collect();
    let text = write_feature_csv(&fm, a.with_labels.then_some(labels.as_slice())).map_err(failure)?;
    emit(a.out.as_deref(), &text)
}

fn fit(a: &FitArgs, s: Settings) -> Result<(), CliError> {
    let name = a
        .classifier
        .clone()
        .or_else(|| s.classifiers.as_ref().and_then(|c| c.first().cloned()))
        .unwrap_or_else(|| "freshprince".into());
    let spec = parse_classifier(&name)?;
    let options = s.classifier_options()?;
    let exec = executor(&s)?;
    let seed = s.seed();
    let model = if let Some(path) = &a.features {
        if !spec.accepts_features() {
            return Err(CliError::usage(format!(
                "{} trains on series; only rotf and ridgecv accept --features",
                spec.name()
            )));
        }
        let data = read_feature_path(path).map_err(failure)?;
        let labels = data
            .labels
            .ok_or_else(|| CliError::usage("feature CSV has no class_label column"))?;
        let mut class_names = labels.clone();
        class_names.sort();
        class_names.dedup();
        let y: Vec<usize> = labels.iter().map(|l| class_names.binary_search(l).unwrap()).collect();
        exec.install(|| TrainedClassifier::fit_features(spec, &data.features, &y, class_names, &options, seed, &exec))
    } else {
        let train = read_ts_path(a.train.as_deref().expect("clap requires --train")).map_err(failure)?;
        exec.install(|| TrainedClassifier::fit(spec, &train, &options, seed, &exec))
    }
    .map_err(failure)?;
    ModelFile::new(model, seed).save(&a.model).map_err(failure)?;
    log::info!("wrote {}", a.model.display());
    Ok(())
}

fn mismatch(message: String) -> CliError {
    CliError::new(ExitCode::Mismatch, anyhow::anyhow!(message))
}

/// Positions of `labels` among the model's classes.
fn map_labels(model: &TrainedClassifier, labels: &[String]) -> Result<Vec<usize>, CliError> {
    labels
        .iter()
        .map(|l| {
            model
                .class_names
                .iter()
                .position(|c| c == l)
                .ok_or_else(|| mismatch(format!("class {l:?} was not seen in training")))
        })
        .collect()
}

fn predict(a: &PredictArgs, s: Settings) -> Result<(), CliError> {
    let file = ModelFile::load(&a.model).map_err(failure)?;
    let model = &file.model;
    let exec = executor(&s)?;
    let (dataset, labels, probabilities) = if let Some(path) = &a.features {
        let data = read_feature_path(path).map_err(failure)?;
        let labels = data
            .labels
            .ok_or_else(|| CliError::usage("feature CSV has no class_label column"))?;
        let stem = path.file_stem().map_or("features".into(), |s| s.to_string_lossy().into_owned());
        let p = model.predict_features_proba(&data.features).map_err(failure)?;
        (stem, labels, p)
    } else {
        let test = read_ts_path(a.test.as_deref().expect("clap requires --test")).map_err(failure)?;
        if let InputSchema::Features { names } = &model.input {
            return Err(mismatch(format!(
                "model expects a feature CSV with {} columns, got a series file",
                names.len()
            )));
        }
        let labels = (0..test.n_cases()).map(|i| test.label_name(i).to_string()).collect();
        let p = exec.install(|| model.predict_proba(&test, &exec)).map_err(failure)?;
        (test.name().to_string(), labels, p)
    };
    let truth = map_labels(model, &labels)?;
    let results = package(
        &dataset,
        &truth,
        &file.classifier,
        format!("model={} seed={}", a.model.display(), file.seed),
        0,
        probabilities,
        0,
        0,
    );
    eprintln!("accuracy {:.4} on {} cases", results.accuracy, results.records.len());
    emit(a.out.as_deref(), &results.render())
}

fn mean_report(reports: &[MetricReport]) -> MetricReport {
    let n = reports.len().max(1) as f64;
    let sum = |f: fn(&MetricReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
    MetricReport {
        acc: sum(|r| r.acc),
        balacc: sum(|r| r.balacc),
        f1_macro: sum(|r| r.f1_macro),
        auroc: sum(|r| r.auroc),
        nll: sum(|r| r.nll),
    }
}

fn benchmark(s: Settings) -> Result<(), CliError> {
    let data_dir = s.data_dir.clone().ok_or_else(|| CliError::usage("--data-dir is required"))?;
    let datasets = expand_datasets(s.datasets.as_deref().unwrap_or_default())?;
    if datasets.is_empty() {
        return Err(CliError::usage("--datasets is required"));
    }
    let cfg = ExperimentConfig {
        data_dir,
        datasets,
        classifiers: s.classifier_specs()?,
        n_resamples: s.resamples()?,
        base_seed: s.seed(),
        out_dir: s.out.clone().unwrap_or_else(|| PathBuf::from("results")),
        overwrite: s.overwrite.unwrap_or(false),
        record_timings: s.record_timings.unwrap_or(true),
        options: s.classifier_options()?,
    };
    let exec = executor(&s)?;
    let summary = run_experiment(&cfg, &exec);

    for (name, err) in &summary.dataset_errors {
        println!("{name}: FAILED to load ({err})");
    }
    let mut per_dataset: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
    for j in &summary.jobs {
        let e = per_dataset.entry(&j.dataset).or_default();
        match j.status {
            JobStatus::Written { .. } => e.0 += 1,
            JobStatus::Skipped => e.1 += 1,
            JobStatus::Failed(_) => e.2 += 1,
        }
    }
    for (name, (w, sk, f)) in &per_dataset {
        println!("{name}: {w} written, {sk} skipped, {f} failed");
    }
    for j in summary.jobs.iter().filter(|j| matches!(j.status, JobStatus::Failed(_))) {
        if let JobStatus::Failed(msg) = &j.status {
            println!("  {} {} resample {}: {msg}", j.dataset, j.classifier, j.resample_id);
        }
    }
    println!(
        "jobs: {} written, {} skipped, {} failed",
        summary.written(),
        summary.skipped(),
        summary.failed()
    );

    let mut by_classifier: BTreeMap<&str, (Vec<MetricReport>, Vec<f64>)> = BTreeMap::new();
    for j in summary.jobs.iter().filter(|j| !matches!(j.status, JobStatus::Failed(_))) {
        let Ok(file) = ResultsFile::read(&j.path) else { continue };
        if let Ok(m) = compute_metrics(&file.records, file.n_classes()) {
            let e = by_classifier.entry(&j.classifier).or_default();
            e.0.push(m);
            e.1.push(file.fit_time_ms as f64);
        }
    }
    if !by_classifier.is_empty() {
        let width = by_classifier.keys().map(|k| k.len()).max().unwrap_or(0).max(10);
        println!(
            "{:<width$}  {:>7}  {:>7}  {:>7}  {:>7}  {:>7}  {:>10}",
            "classifier", "Acc", "BalAcc", "F1", "AUROC", "NLL", "fit ms"
        );
        for (name, (reports, fits)) in &by_classifier {
            let m = mean_report(reports);
            let fit = fits.iter().sum::<f64>() / fits.len() as f64;
            println!(
                "{name:<width$}  {:>7.4}  {:>7.4}  {:>7.4}  {:>7.4}  {:>7.4}  {fit:>10.1}",
                m.acc, m.balacc, m.f1_macro, m.auroc, m.nll
            );
        }
    }
    if summary.succeeded_datasets().is_empty() {
        Err(CliError::new(ExitCode::Failure, anyhow::anyhow!("no dataset completed")))
    } else {
        Ok(())
    }
}

fn compare(results: Option<&Path>, s: Settings) -> Result<(), CliError> {
    let alpha = s.alpha()?;
    let mut map = match results {
        Some(root) => collect_results(root, s.classifiers.as_deref()).map_err(failure)?,
        None => Default::default(),
    };
    if let Some(path) = &s.external_results {
        for (name, column) in read_external(path).map_err(failure)? {
            if map.contains_key(&name) {
                return Err(CliError::usage(format!(
                    "external column {name:?} clashes with a results tree of the same name"
                )));
            }
            map.insert(name, column);
        }
    }
    let insufficient = |e: CoreError| CliError::new(ExitCode::InsufficientData, e);
    if map.len() < 2 {
        return Err(insufficient(CoreError::InsufficientData {
            needed: 2,
            got: map.len(),
        }));
    }
    let table = common_table(&map);
    let report = compare_table(&table, alpha).map_err(|e| match e {
        CoreError::InsufficientData { .. } => insufficient(e),
        other => failure(other),
    })?;
    let out = s.out.clone().unwrap_or_else(|| PathBuf::from("comparison"));
    write_report(&report, &out).map_err(failure)?;
    print!("{}", freshprince_core::evaluation::render_cd_text(&report));
    Ok(())
}
