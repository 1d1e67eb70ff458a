mod common;

use common::*;
use freshprince::model_file::ModelFile;
use freshprince::results::{results_path, ResultsFile};
use freshprince::tsfile::write_ts_path;
use tempfile::tempdir;

fn header_width(csv: &str) -> usize {
    csv.lines().next().unwrap().split(',').count()
}

#[test]
fn transform_writes_feature_columns() {
    let dir = tempdir().unwrap();
    let ds = sine_bump("t", 8, 60, 0.1, 1.0, 1);
    let input = dir.path().join("t.ts");
    write_ts_path(&input, &ds).unwrap();

    let o = run(&["transform", "--input", p(&input), "--transform", "summary"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(header_width(&out), 7);
    assert_eq!(out.lines().count(), 9);

    let o = run(&["--seed", "1", "transform", "--input", p(&input), "--transform", "intervals-basic"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(header_width(&stdout(&o)), 700);

    let o = run(&["transform", "--input", p(&input), "--transform", "summary", "--with-labels"]);
    assert!(stdout(&o).lines().next().unwrap().ends_with(",class_label"));
}

#[test]
fn unknown_transform_is_a_usage_error() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("t.ts");
    write_ts_path(&input, &sine_bump("t", 4, 20, 0.1, 1.0, 1)).unwrap();
    let o = run(&["transform", "--input", p(&input), "--transform", "rocket"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("summary"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(run(&["fit", "--bogus"]).status.code(), Some(2));
}

#[test]
fn fit_then_predict_beats_majority() {
    let dir = tempdir().unwrap();
    let train = dir.path().join("train.ts");
    let test = dir.path().join("test.ts");
    write_ts_path(&train, &sine_bump("d", 30, 80, 0.1, 1.5, 2)).unwrap();
    write_ts_path(&test, &sine_bump("d", 30, 80, 0.1, 1.5, 3)).unwrap();
    let model = dir.path().join("m.json");
    let out = dir.path().join("r.csv");
    let o = run(&["--seed", "7", "fit", "--classifier", "freshprince", "--train", p(&train), "--model", p(&model), "--n-trees", "20"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["predict", "--model", p(&model), "--test", p(&test), "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = ResultsFile::read(&out).unwrap();
    assert_eq!(r.records.len(), 30);
    assert!(r.accuracy >= 0.5, "{}", r.accuracy);
    assert_eq!(r.classifier, "freshprince");
}

#[test]
fn predicting_the_wrong_length_is_a_mismatch() {
    let dir = tempdir().unwrap();
    let train = dir.path().join("train.ts");
    let test = dir.path().join("test.ts");
    write_ts_path(&train, &sine_bump("d", 10, 40, 0.1, 1.5, 2)).unwrap();
    write_ts_path(&test, &sine_bump("d", 10, 41, 0.1, 1.5, 3)).unwrap();
    let model = dir.path().join("m.json");
    let o = run(&["fit", "--classifier", "ridgecv", "--train", p(&train), "--model", p(&model)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["predict", "--model", p(&model), "--test", p(&test)]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn fitting_twice_with_one_seed_is_identical() {
    let dir = tempdir().unwrap();
    let train = dir.path().join("train.ts");
    write_ts_path(&train, &sine_bump("d", 16, 50, 0.1, 1.5, 4)).unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (m, threads) in [(&a, "1"), (&b, "4")] {
        let o = run(&["--seed", "7", "--threads", threads, "fit", "--train", p(&train), "--model", p(m), "--n-trees", "10"]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let loaded = ModelFile::load(&a).unwrap();
    assert_eq!(loaded.seed, 7);
}

#[test]
fn features_csv_fit_and_predict() {
    let dir = tempdir().unwrap();
    let train = dir.path().join("train.ts");
    write_ts_path(&train, &sine_bump("d", 16, 50, 0.1, 1.5, 5)).unwrap();
    let feats = dir.path().join("f.csv");
    let o = run(&["transform", "--input", p(&train), "--transform", "summary", "--with-labels", "--out", p(&feats)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let model = dir.path().join("m.json");
    let o = run(&["fit", "--classifier", "freshprince", "--features", p(&feats), "--model", p(&model)]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["fit", "--classifier", "rotf", "--features", p(&feats), "--model", p(&model), "--n-trees", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["predict", "--model", p(&model), "--features", p(&feats)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["predict", "--model", p(&model), "--test", p(&train)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn benchmark_writes_skips_and_compares() {
    let dir = tempdir().unwrap();
    let data = dir.path().join("data");
    let names = toy_archive(&data, 5, 40);
    let results = dir.path().join("results");
    let bench = |extra: &[&str]| {
        let datasets = names.join(",");
        let mut args = vec![
            "--seed", "3", "benchmark", "--data-dir", p(&data), "--datasets", &datasets,
            "--classifiers", "summary+ridgecv,dtw1nn", "--resamples", "1", "--out", p(&results),
        ];
        args.extend_from_slice(extra);
        run(&args)
    };
    let o = bench(&[]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("toy0: 2 written, 0 skipped, 0 failed"), "{}", stdout(&o));
    for clf in ["summary+ridgecv", "dtw1nn"] {
        for n in &names {
            assert!(results_path(&results, clf, n, 0).exists());
        }
    }
    let before = std::fs::read(results_path(&results, "dtw1nn", "toy0", 0)).unwrap();
    let o = bench(&[]);
    assert!(stdout(&o).contains("toy0: 0 written, 2 skipped, 0 failed"), "{}", stdout(&o));
    assert_eq!(before, std::fs::read(results_path(&results, "dtw1nn", "toy0", 0)).unwrap());

    // A copy of one tree under another name ties on every dataset.
    let copy = results.join("twin/Predictions");
    std::fs::create_dir_all(&copy).unwrap();
    for n in &names {
        let from = results_path(&results, "dtw1nn", n, 0);
        let to = results_path(&results, "twin", n, 0);
        std::fs::create_dir_all(to.parent().unwrap()).unwrap();
        std::fs::copy(from, to).unwrap();
    }
    let out = dir.path().join("cmp");
    let o = run(&["compare", "--results", p(&results), "--classifiers", "dtw1nn,twin", "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("[dtw1nn, twin]"), "{}", stdout(&o));
    for f in freshprince::compare::REPORT_FILES {
        assert!(out.join(f).exists(), "{f}");
    }

    let ext = dir.path().join("ext.csv");
    let mut text = String::from("dataset,published\n");
    for n in &names {
        text.push_str(&format!("{n},0.99\n"));
    }
    std::fs::write(&ext, text).unwrap();
    let o = run(&["compare", "--results", p(&results), "--external-results", p(&ext), "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("published"));
    let o = run(&["compare", "--results", p(&results), "--external-results", p(&ext), "--classifiers", "published,twin", "--out", p(&out)]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn compare_needs_five_datasets() {
    let dir = tempdir().unwrap();
    let data = dir.path().join("data");
    let names = toy_archive(&data, 3, 30);
    let results = dir.path().join("results");
    let datasets = names.join(",");
    let o = run(&[
        "benchmark", "--data-dir", p(&data), "--datasets", &datasets, "--classifiers", "ridgecv,dtw1nn",
        "--out", p(&results), "--dtw-window", "0.1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["compare", "--results", p(&results), "--out", p(&dir.path().join("c"))]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn benchmark_with_no_loadable_dataset_fails() {
    let dir = tempdir().unwrap();
    let o = run(&["benchmark", "--data-dir", p(dir.path()), "--datasets", "missing", "--out", p(&dir.path().join("r"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempdir().unwrap();
    let data = dir.path().join("data");
    let names = toy_archive(&data, 1, 30);
    let results = dir.path().join("results");
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!(
            "data_dir = {:?}\ndatasets = [{:?}]\nclassifiers = [\"ridgecv\"]\nout = {:?}\nseed = 5\n",
            p(&data),
            names[0],
            p(&results)
        ),
    )
    .unwrap();
    let o = run(&["--config", p(&cfg), "benchmark"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = ResultsFile::read(&results_path(&results, "ridgecv", "toy0", 0)).unwrap();
    assert!(r.parameters.ends_with("seed=5"), "{}", r.parameters);

    std::fs::write(&cfg, "n_tree = 4\n").unwrap();
    assert_eq!(run(&["--config", p(&cfg), "benchmark"]).status.code(), Some(2));
}
