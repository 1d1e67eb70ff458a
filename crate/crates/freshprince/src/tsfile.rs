//! The `.ts` text format for labelled univariate series.
//!
//! Header directives are case-insensitive. Accepted: `@problemName`,
//! `@timeStamps false`, `@univariate true`, `@classLabel true <labels>`,
//! `@equalLength true`, `@seriesLength <n>`, `@missing false`,
//! `@dimensions 1`, then `@data`. Each data line is comma-separated values,
//! a colon and the class label.

use std::fmt::Write as _;
use std::path::Path;

use freshprince_core::dataset::TimeSeriesDataset;

use crate::error::FormatError;

fn flag(line: usize, value: Option<&str>, directive: &str) -> Result<bool, FormatError> {
    match value.map(str::to_ascii_lowercase).as_deref() {
        Some("true") => Ok(true),
        Some("false") => Ok(false),
        _ => Err(FormatError::parse(line, format!("@{directive} expects true or false"))),
    }
}

/// Parses `.ts` text. `default_name` is used when there is no `@problemName`.
pub fn parse_ts_file(text: &str, default_name: &str) -> Result<TimeSeriesDataset, FormatError> {
    let mut name: Option<String> = None;
    let mut class_names: Option<Vec<String>> = None;
    let mut in_data = false;
    let mut series: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !in_data {
            let Some(directive) = line.strip_prefix('@') else {
                return Err(FormatError::parse(line_no, "expected a header directive before @data"));
            };
            let mut parts = directive.split_whitespace();
            let key = parts.next().unwrap_or("").to_ascii_lowercase();
            match key.as_str() {
                "problemname" => {
                    name = Some(
                        parts
                            .next()
                            .ok_or_else(|| FormatError::parse(line_no, "@problemName needs a value"))?
                            .to_string(),
                    )
                }
                "timestamps" => {
                    if flag(line_no, parts.next(), "timeStamps")? {
                        return Err(FormatError::UnsupportedFormat("time stamps".into()));
                    }
                }
                "univariate" => {
                    if !flag(line_no, parts.next(), "univariate")? {
                        return Err(FormatError::UnsupportedFormat("multivariate series".into()));
                    }
                }
                "equallength" => {
                    if !flag(line_no, parts.next(), "equalLength")? {
                        return Err(FormatError::UnsupportedFormat("unequal length series".into()));
                    }
                }
                "missing" => {
                    if flag(line_no, parts.next(), "missing")? {
                        return Err(FormatError::UnsupportedFormat("missing values".into()));
                    }
                }
                "serieslength" => {
                    parts
                        .next()
                        .and_then(|v| v.parse::<usize>().ok())
                        .ok_or_else(|| FormatError::parse(line_no, "@seriesLength expects an integer"))?;
                }
                "dimensions" => match parts.next().map(str::parse::<usize>) {
                    Some(Ok(1)) => {}
                    Some(Ok(_)) => return Err(FormatError::UnsupportedFormat("multivariate series".into())),
                    _ => return Err(FormatError::parse(line_no, "@dimensions expects an integer")),
                },
                "classlabel" => {
                    if !flag(line_no, parts.next(), "classLabel")? {
                        return Err(FormatError::UnsupportedFormat("unlabelled data".into()));
                    }
                    let declared: Vec<String> = parts.map(str::to_string).collect();
                    if declared.is_empty() {
                        return Err(FormatError::parse(line_no, "@classLabel true needs at least one label"));
                    }
                    class_names = Some(declared);
                }
                "data" => {
                    if class_names.is_none() {
                        return Err(FormatError::parse(line_no, "@data before @classLabel"));
                    }
                    in_data = true;
                }
                other => return Err(FormatError::parse(line_no, format!("unknown directive @{other}"))),
            }
            continue;
        }
        let (values, label) = line
            .rsplit_once(':')
            .ok_or_else(|| FormatError::parse(line_no, "data line has no ':' before the label"))?;
        if values.contains(':') {
            return Err(FormatError::UnsupportedFormat("multivariate series".into()));
        }
        let mut row = Vec::new();
        for token in values.split(',') {
            let token = token.trim();
            if token == "?" {
                return Err(FormatError::UnsupportedFormat("missing values".into()));
            }
            let v: f64 = token
                .parse()
                .map_err(|_| FormatError::parse(line_no, format!("malformed number {token:?}")))?;
            if !v.is_finite() {
                return Err(FormatError::parse(line_no, format!("non-finite value {token:?}")));
            }
            row.push(v);
        }
        series.push(row);
        labels.push(label.trim().to_string());
    }
    let Some(class_names) = class_names.filter(|_| in_data) else {
        return Err(FormatError::parse(text.lines().count(), "missing @classLabel or @data"));
    };
    let name = name.unwrap_or_else(|| default_name.to_string());
    Ok(TimeSeriesDataset::new(name, series, &labels, class_names)?)
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == ':' || c == ',')
}

/// Canonical `.ts` text; values use the shortest decimal that reads back to
/// the same double.
pub fn write_ts_file(ds: &TimeSeriesDataset) -> Result<String, FormatError> {
    if ds.is_empty() {
        return Err(freshprince_core::Error::EmptyDataset.into());
    }
    if let Some(bad) = ds.class_names().iter().find(|c| !is_token(c)) {
        return Err(FormatError::UnsupportedFormat(format!("class label {bad:?} is not a single token")));
    }
    let name: String = ds.name().split_whitespace().collect::<Vec<_>>().join("_");
    let mut out = String::new();
    let _ = writeln!(out, "@problemName {}", if name.is_empty() { "unnamed" } else { &name });
    out.push_str("@timeStamps false\n@univariate true\n");
    let _ = writeln!(out, "@classLabel true {}", ds.class_names().join(" "));
    out.push_str("@data\n");
    for i in 0..ds.n_cases() {
        for (j, v) in ds.series(i).iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v:?}");
        }
        let _ = writeln!(out, ":{}", ds.label_name(i));
    }
    Ok(out)
}

pub fn read_ts_path(path: &Path) -> Result<TimeSeriesDataset, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("unnamed");
    parse_ts_file(&text, stem)
}

pub fn write_ts_path(path: &Path, ds: &TimeSeriesDataset) -> Result<(), FormatError> {
    let text = write_ts_file(ds)?;
    std::fs::write(path, text).map_err(|e| FormatError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use freshprince_core::Error;

    const HEADER: &str = "# comment\n@problemName toy\n@timeStamps false\n@univariate true\n@classLabel true a b\n@data\n";

    #[test]
    fn minimal_file() {
        let ds = parse_ts_file(&format!("{HEADER}1.0,2.0,3.0:a\n"), "x").unwrap();
        assert_eq!(ds.n_cases(), 1);
        assert_eq!(ds.series_length(), 3);
        assert_eq!(ds.label_name(0), "a");
        assert_eq!(ds.name(), "toy");
    }

    #[test]
    fn case_insensitive_and_whitespace() {
        let text = "@PROBLEMNAME t\n@ClassLabel TRUE b a\n@DATA\n 1 , 2,3 : b \n";
        let ds = parse_ts_file(text, "x").unwrap();
        assert_eq!(ds.series(0), &[1.0, 2.0, 3.0]);
        assert_eq!(ds.class_names(), &["a", "b"]);
    }

    #[test]
    fn unequal_lengths() {
        let err = parse_ts_file(&format!("{HEADER}1,2,3:a\n1,2,3,4:b\n"), "x").unwrap_err();
        assert!(matches!(err, FormatError::Core(Error::UnequalLength { .. })));
    }

    #[test]
    fn unknown_label() {
        let err = parse_ts_file(&format!("{HEADER}1,2,3:c\n"), "x").unwrap_err();
        assert!(matches!(err, FormatError::Core(Error::UnknownLabel(_))));
    }

    #[test]
    fn malformed_number_reports_line() {
        let err = parse_ts_file(&format!("{HEADER}1,2,3:a\n1,x,3:a\n"), "x").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 8, .. }), "{err}");
    }

    #[test]
    fn unsupported_headers() {
        for h in ["@timeStamps true", "@univariate false", "@missing true", "@dimensions 3"] {
            let err = parse_ts_file(&format!("{h}\n@classLabel true a\n@data\n1,2,3:a\n"), "x").unwrap_err();
            assert!(matches!(err, FormatError::UnsupportedFormat(_)), "{h}");
        }
    }

    #[test]
    fn writes_canonical_lines() {
        let ds = parse_ts_file(&format!("{HEADER}1,2,3:a\n"), "x").unwrap();
        let text = write_ts_file(&ds).unwrap();
        assert!(text.lines().any(|l| l == "1.0,2.0,3.0:a"));
        assert_eq!(parse_ts_file(&text, "y").unwrap(), ds);
    }

    #[test]
    fn empty_dataset_is_not_written() {
        let ds = parse_ts_file(HEADER, "x").unwrap();
        assert!(matches!(write_ts_file(&ds), Err(FormatError::Core(Error::EmptyDataset))));
    }
}
