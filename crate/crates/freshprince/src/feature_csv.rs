//! Feature matrices as CSV: a header of feature names, one row per case.
//!
//! A final column named [`LABEL_COLUMN`] optionally carries class labels so a
//! vector classifier can be trained from the file alone.

use std::path::Path;

use freshprince_core::features::FeatureMatrix;

use crate::error::FormatError;

pub const LABEL_COLUMN: &str = "class_label";

#[derive(Debug, Clone, PartialEq)]
pub struct LabelledFeatures {
    pub features: FeatureMatrix,
    pub labels: Option<Vec<String>>,
}

fn csv_error(e: csv::Error) -> FormatError {
    let line = e.position().map_or(0, |p| p.line() as usize);
    FormatError::parse(line, e.to_string())
}

pub fn write_feature_csv(fm: &FeatureMatrix, labels: Option<&[String]>) -> Result<String, FormatError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let mut header: Vec<&str> = fm.names().iter().map(String::as_str).collect();
    if labels.is_some() {
        header.push(LABEL_COLUMN);
    }
    w.write_record(&header).map_err(csv_error)?;
    for i in 0..fm.n_rows() {
        let mut record: Vec<String> = fm.row(i).iter().map(|v| format!("{v:?}")).collect();
        if let Some(l) = labels {
            record.push(l[i].clone());
        }
        w.write_record(&record).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::parse(0, e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn parse_feature_csv(text: &str) -> Result<LabelledFeatures, FormatError> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut names: Vec<String> = r.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
    let has_labels = names.last().is_some_and(|n| n == LABEL_COLUMN);
    if has_labels {
        names.pop();
    }
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let line = i + 2;
        let mut row = Vec::with_capacity(names.len());
        for (j, field) in record.iter().enumerate() {
            if has_labels && j == names.len() {
                labels.push(field.to_string());
                continue;
            }
            row.push(
                field
                    .parse::<f64>()
                    .map_err(|_| FormatError::parse(line, format!("malformed number {field:?}")))?,
            );
        }
        rows.push(row);
    }
    Ok(LabelledFeatures {
        features: FeatureMatrix::new(names, &rows)?,
        labels: has_labels.then_some(labels),
    })
}

pub fn read_feature_path(path: &Path) -> Result<LabelledFeatures, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
    parse_feature_csv(&text)
}
