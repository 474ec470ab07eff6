//! Dataset manifest schema: line-oriented records, one sample per line.

use crate::qa::QASample;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use std::collections::BTreeSet;

pub const MANIFEST_FORMAT_VERSION: u32 = 1;

/// Which training split a record belongs to. CoT and RL data are generated
/// from disjoint seed ranges; `validate` enforces the convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetSplit {
    Rl,
    Cot,
}

impl DatasetSplit {
    pub fn slug(self) -> &'static str {
        match self {
            DatasetSplit::Rl => "rl",
            DatasetSplit::Cot => "cot",
        }
    }
}

/// Scenario-level parameters kept for reproducibility reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioParams {
    pub duration_s: f64,
    pub fps: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op_count: Option<usize>,
    pub difficulty: String,
}

/// Per-record provenance: everything needed to regenerate the sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub generator_version: String,
    pub split: DatasetSplit,
    /// Regeneration attempts consumed before an unambiguous sample emerged.
    pub retries: u32,
    pub params: ScenarioParams,
}

/// One manifest line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub format_version: u32,
    pub sample: QASample,
    pub provenance: Provenance,
}

impl ManifestRecord {
    pub fn to_json_line(&self) -> Result<String, ManifestError> {
        serde_json::to_string(self).map_err(|e| ManifestError::Serialize(e.to_string()))
    }

    pub fn from_json_line(line: &str) -> Result<Self, ManifestError> {
        serde_json::from_str(line).map_err(|e| ManifestError::Parse(e.to_string()))
    }
}

/// In-memory manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub records: Vec<ManifestRecord>,
}

impl DatasetManifest {
    pub fn new(records: Vec<ManifestRecord>) -> Self {
        DatasetManifest { format_version: MANIFEST_FORMAT_VERSION, records }
    }

    /// Structural checks: unique ids, uniform format version, sample
    /// invariants. File existence is the validator CLI's job.
    pub fn check_structure(&self) -> Result<(), ManifestError> {
        let mut ids = BTreeSet::new();
        for record in &self.records {
            if record.format_version != self.format_version {
                return Err(ManifestError::MixedVersions);
            }
            if !ids.insert(record.sample.id.as_str()) {
                return Err(ManifestError::DuplicateId(record.sample.id.clone()));
            }
            record
                .sample
                .validate()
                .map_err(|e| ManifestError::InvalidSample(e.to_string()))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("failed to serialize manifest record: {0}")]
    Serialize(String),
    #[error("failed to parse manifest record: {0}")]
    Parse(String),
    #[error("manifest mixes format versions")]
    MixedVersions,
    #[error("duplicate sample id {0:?}")]
    DuplicateId(String),
    #[error("invalid sample: {0}")]
    InvalidSample(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qa::SampleKind;
    use crate::scene::TaskType;

    fn record(id: &str) -> ManifestRecord {
        ManifestRecord {
            format_version: MANIFEST_FORMAT_VERSION,
            sample: QASample {
                id: id.into(),
                video_path: "videos/v.mp4".into(),
                metadata_path: "videos/v.json".into(),
                kind: SampleKind::ShortTerm { task_type: TaskType::MotionCounting },
                question: "How many times does the blue star move?".into(),
                answer: "4".into(),
                choices: None,
                answer_index: None,
                cot: None,
            },
            provenance: Provenance {
                seed: 7,
                generator_version: "0.1.0".into(),
                split: DatasetSplit::Rl,
                retries: 0,
                params: ScenarioParams {
                    duration_s: 4.0,
                    fps: 30,
                    op_count: None,
                    difficulty: "standard".into(),
                },
            },
        }
    }

    #[test]
    fn line_roundtrip_is_exact() {
        let rec = record("a");
        let line = rec.to_json_line().unwrap();
        assert!(!line.contains('\n'));
        assert_eq!(ManifestRecord::from_json_line(&line).unwrap(), rec);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let manifest = DatasetManifest::new(vec![record("a"), record("a")]);
        assert!(matches!(
            manifest.check_structure(),
            Err(ManifestError::DuplicateId(_))
        ));
    }
}
