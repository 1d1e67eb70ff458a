//! Per-resample results files.
//!
//! ```text
//! <dataset>,<classifier>,TEST,<resample_id>
//! <parameter string>
//! <accuracy>,<fit_time_ms>,<predict_time_ms>
//! <true_class>,<predicted_class>,,<p_0>,<p_1>,...
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use freshprince_core::evaluation::PredictionRecord;

use crate::error::FormatError;

#[derive(Debug, Clone, PartialEq)]
pub struct ResultsFile {
    pub dataset: String,
    pub classifier: String,
    pub resample_id: u64,
    pub parameters: String,
    pub accuracy: f64,
    pub fit_time_ms: u64,
    pub predict_time_ms: u64,
    pub records: Vec<PredictionRecord>,
}

/// `<root>/<classifier>/Predictions/<dataset>/testResample<id>.csv`.
pub fn results_path(root: &Path, classifier: &str, dataset: &str, resample_id: u64) -> PathBuf {
    root.join(classifier)
        .join("Predictions")
        .join(dataset)
        .join(format!("testResample{resample_id}.csv"))
}

impl ResultsFile {
    pub fn n_classes(&self) -> usize {
        self.records.first().map_or(0, |r| r.probabilities.len())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{},{},TEST,{}", self.dataset, self.classifier, self.resample_id);
        let _ = writeln!(s, "{}", self.parameters.replace(['\n', '\r'], " "));
        let _ = writeln!(s, "{:?},{},{}", self.accuracy, self.fit_time_ms, self.predict_time_ms);
        for r in &self.records {
            let _ = write!(s, "{},{},", r.true_label, r.predicted_label);
            for p in &r.probabilities {
                let _ = write!(s, ",{p:?}");
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines().enumerate();
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| FormatError::parse(0, format!("results file ends before the {what} line")))
        };
        let (_, head) = next("header")?;
        let fields: Vec<&str> = head.split(',').collect();
        if fields.len() != 4 || fields[2] != "TEST" {
            return Err(FormatError::parse(1, "expected <dataset>,<classifier>,TEST,<resample>"));
        }
        let resample_id = fields[3]
            .parse()
            .map_err(|_| FormatError::parse(1, "resample id is not an integer"))?;
        let (_, parameters) = next("parameter")?;
        let (_, summary) = next("summary")?;
        let parts: Vec<&str> = summary.split(',').collect();
        let bad = || FormatError::parse(3, "expected <accuracy>,<fit_ms>,<predict_ms>");
        if parts.len() != 3 {
            return Err(bad());
        }
        let accuracy: f64 = parts[0].parse().map_err(|_| bad())?;
        let fit_time_ms: u64 = parts[1].parse().map_err(|_| bad())?;
        let predict_time_ms: u64 = parts[2].parse().map_err(|_| bad())?;
        let mut records = Vec::new();
        for (i, line) in lines {
            let line_no = i + 1;
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            let bad = || FormatError::parse(line_no, "malformed prediction row");
            if f.len() < 4 || !f[2].is_empty() {
                return Err(bad());
            }
            let probabilities = f[3..]
                .iter()
                .map(|p| p.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            records.push(PredictionRecord {
                true_label: f[0].parse().map_err(|_| bad())?,
                predicted_label: f[1].parse().map_err(|_| bad())?,
                probabilities,
                fit_time_ms: fit_time_ms as f64,
                predict_time_ms: predict_time_ms as f64,
            });
        }
        Ok(Self {
            dataset: fields[0].to_string(),
            classifier: fields[1].to_string(),
            resample_id,
            parameters: parameters.to_string(),
            accuracy,
            fit_time_ms,
            predict_time_ms,
            records,
        })
    }

    pub fn write(&self, path: &Path) -> Result<(), FormatError> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| FormatError::io(dir, e))?;
        }
        std::fs::write(path, self.render()).map_err(|e| FormatError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
        Self::parse(&text)
    }
}
