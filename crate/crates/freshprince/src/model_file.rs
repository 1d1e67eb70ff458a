//! Versioned JSON container for trained classifiers.

use std::path::Path;

use freshprince_core::classifiers::TrainedClassifier;
use serde::{Deserialize, Serialize};

use crate::error::FormatError;

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub classifier: String,
    pub seed: u64,
    pub model: TrainedClassifier,
}

impl ModelFile {
    pub fn new(model: TrainedClassifier, seed: u64) -> Self {
        Self {
            format_version: MODEL_FORMAT_VERSION,
            classifier: model.spec.name(),
            seed,
            model,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| FormatError::parse(e.line(), e.to_string()))?;
        match value.get("format_version").and_then(|v| v.as_u64()) {
            Some(v) if v == u64::from(MODEL_FORMAT_VERSION) => {}
            Some(v) => return Err(FormatError::UnsupportedFormat(format!("model format version {v}"))),
            None => return Err(FormatError::parse(1, "missing format_version")),
        }
        serde_json::from_value(value).map_err(|e| FormatError::parse(0, e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<(), FormatError> {
        std::fs::write(path, self.to_json()).map_err(|e| FormatError::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
        Self::from_json(&text)
    }
}
