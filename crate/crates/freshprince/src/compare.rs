//! Accuracy tables from results trees and the written comparison report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use freshprince_core::evaluation::{build_cliques, render_cd_svg, render_cd_text, ComparisonReport};

use crate::error::FormatError;
use crate::results::ResultsFile;

/// classifier → dataset → mean accuracy.
pub type AccuracyMap = BTreeMap<String, BTreeMap<String, f64>>;

/// Mean test accuracy over the resamples present for every classifier
/// directory under `root` (or just `only`, when given).
pub fn collect_results(root: &Path, only: Option<&[String]>) -> anyhow::Result<AccuracyMap> {
    let classifiers: Vec<String> = match only {
        Some(list) => list.to_vec(),
        None => {
            let mut names = Vec::new();
            let entries = std::fs::read_dir(root).map_err(|e| FormatError::io(root, e))?;
            for entry in entries {
                let entry = entry.map_err(|e| FormatError::io(root, e))?;
                if entry.path().join("Predictions").is_dir() {
                    names.push(entry.file_name().to_string_lossy().into_owned());
                }
            }
            names.sort();
            names
        }
    };
    let mut out = AccuracyMap::new();
    for clf in classifiers {
        let pred = root.join(&clf).join("Predictions");
        let mut per_dataset = BTreeMap::new();
        let mut datasets: Vec<PathBuf> = std::fs::read_dir(&pred)
            .map_err(|e| FormatError::io(&pred, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_dir())
            .collect();
        datasets.sort();
        for dir in datasets {
            let mut files: Vec<(u64, PathBuf)> = std::fs::read_dir(&dir)
                .map_err(|e| FormatError::io(&dir, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter_map(|p| {
                    let name = p.file_name()?.to_str()?;
                    let id = name.strip_prefix("testResample")?.strip_suffix(".csv")?.parse().ok()?;
                    Some((id, p))
                })
                .collect();
            if files.is_empty() {
                continue;
            }
            files.sort();
            let mut sum = 0.0;
            for (_, path) in &files {
                sum += ResultsFile::read(path).with_context(|| path.display().to_string())?.accuracy;
            }
            let name = dir.file_name().unwrap().to_string_lossy().into_owned();
            per_dataset.insert(name, sum / files.len() as f64);
        }
        out.insert(clf, per_dataset);
    }
    Ok(out)
}

/// Published accuracies: a header `dataset,<classifier>,...` and one row per
/// dataset. Empty cells are treated as missing.
pub fn read_external(path: &Path) -> anyhow::Result<AccuracyMap> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| path.display().to_string())?;
    let headers: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let mut out = AccuracyMap::new();
    for name in headers.iter().skip(1) {
        out.insert(name.clone(), BTreeMap::new());
    }
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let dataset = record.get(0).unwrap_or_default().to_string();
        for (j, field) in record.iter().enumerate().skip(1) {
            if field.is_empty() {
                continue;
            }
            let v: f64 = field
                .parse()
                .map_err(|_| FormatError::parse(i + 2, format!("malformed accuracy {field:?}")))?;
            out.get_mut(&headers[j]).unwrap().insert(dataset.clone(), v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyTable {
    pub classifiers: Vec<String>,
    pub datasets: Vec<String>,
    /// `values[d][c]`.
    pub values: Vec<Vec<f64>>,
}

/// Restricts every classifier to the datasets they all cover, in name order.
pub fn common_table(map: &AccuracyMap) -> AccuracyTable {
    let classifiers: Vec<String> = map.keys().cloned().collect();
    let datasets: Vec<String> = match map.values().next() {
        Some(first) => first
            .keys()
            .filter(|d| map.values().all(|m| m.contains_key(*d)))
            .cloned()
            .collect(),
        None => Vec::new(),
    };
    let values = datasets
        .iter()
        .map(|d| classifiers.iter().map(|c| map[c][d]).collect())
        .collect();
    AccuracyTable {
        classifiers,
        datasets,
        values,
    }
}

pub fn compare_table(table: &AccuracyTable, alpha: f64) -> freshprince_core::Result<ComparisonReport> {
    build_cliques(&table.classifiers, &table.datasets, &table.values, alpha)
}

/// Files written by [`write_report`], relative to its output directory.
pub const REPORT_FILES: [&str; 6] = [
    "accuracy.csv",
    "ranks.csv",
    "pvalues.csv",
    "pvalues_holm.csv",
    "cd_diagram.svg",
    "cd_diagram.txt",
];

fn matrix_csv(names: &[String], m: &[Vec<f64>]) -> String {
    let mut s = String::from("classifier");
    for n in names {
        let _ = write!(s, ",{n}");
    }
    s.push('\n');
    for (i, row) in m.iter().enumerate() {
        s.push_str(&names[i]);
        for v in row {
            let _ = write!(s, ",{v:?}");
        }
        s.push('\n');
    }
    s
}

pub fn write_report(report: &ComparisonReport, out: &Path) -> anyhow::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out).map_err(|e| FormatError::io(out, e))?;
    let mut accuracy = String::from("dataset");
    for c in &report.classifiers {
        let _ = write!(accuracy, ",{c}");
    }
    accuracy.push('\n');
    for (d, row) in report.datasets.iter().zip(&report.accuracies) {
        accuracy.push_str(d);
        for v in row {
            let _ = write!(accuracy, ",{v:?}");
        }
        accuracy.push('\n');
    }
    let mut ranks = String::from("classifier,average_rank,clique\n");
    for &c in &report.order {
        let clique = report.cliques.iter().position(|q| q.contains(&c)).unwrap_or(0);
        let _ = writeln!(ranks, "{},{:?},{}", report.classifiers[c], report.average_ranks[c], clique + 1);
    }
    let contents = [
        accuracy,
        ranks,
        matrix_csv(&report.classifiers, &report.p_values),
        matrix_csv(&report.classifiers, &report.adjusted_p_values),
        render_cd_svg(report),
        render_cd_text(report),
    ];
    let mut written = Vec::new();
    for (name, text) in REPORT_FILES.iter().zip(contents) {
        let path = out.join(name);
        std::fs::write(&path, text).map_err(|e| FormatError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
