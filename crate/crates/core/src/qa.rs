//! QA sample records.

use crate::scene::TaskType;
use crate::script::QuestionMode;
use crate::state::Family;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Task category of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "category", rename_all = "snake_case")]
pub enum SampleKind {
    ShortTerm { task_type: TaskType },
    LongTerm { family: Family, question_mode: QuestionMode },
}

impl SampleKind {
    pub fn slug(&self) -> String {
        match self {
            SampleKind::ShortTerm { task_type } => task_type.slug().to_string(),
            SampleKind::LongTerm { family, question_mode } => {
                format!("{}_{}", family.slug(), question_mode.slug())
            }
        }
    }
}

/// One question/answer pair bound to a video and its metadata sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QASample {
    pub id: String,
    pub video_path: String,
    pub metadata_path: String,
    #[serde(flatten)]
    pub kind: SampleKind,
    pub question: String,
    /// Canonical answer text.
    pub answer: String,
    /// Present for multiple-choice samples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub answer_index: Option<usize>,
    /// Verified reasoning text, filled by the CoT pipeline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cot: Option<String>,
}

impl QASample {
    pub fn validate(&self) -> Result<(), QaInvariantError> {
        if self.id.is_empty() {
            return Err(QaInvariantError::EmptyId);
        }
        if self.question.trim().is_empty() || self.answer.trim().is_empty() {
            return Err(QaInvariantError::EmptyText(self.id.clone()));
        }
        match (&self.choices, self.answer_index) {
            (None, None) => Ok(()),
            (None, Some(_)) => Err(QaInvariantError::IndexWithoutChoices(self.id.clone())),
            (Some(_), None) => Err(QaInvariantError::ChoicesWithoutIndex(self.id.clone())),
            (Some(choices), Some(idx)) => {
                if choices.len() < 2 {
                    return Err(QaInvariantError::TooFewChoices(self.id.clone()));
                }
                let mut seen = std::collections::BTreeSet::new();
                if !choices.iter().all(|c| seen.insert(c.as_str())) {
                    return Err(QaInvariantError::DuplicateChoices(self.id.clone()));
                }
                let occurrences = choices.iter().filter(|c| **c == self.answer).count();
                if occurrences != 1 {
                    return Err(QaInvariantError::AnswerNotExactlyOnce {
                        id: self.id.clone(),
                        occurrences,
                    });
                }
                if choices.get(idx).map(String::as_str) != Some(self.answer.as_str()) {
                    return Err(QaInvariantError::IndexMismatch(self.id.clone()));
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum QaInvariantError {
    #[error("sample id is empty")]
    EmptyId,
    #[error("sample {0}: question or answer text is empty")]
    EmptyText(String),
    #[error("sample {0}: answer_index present without choices")]
    IndexWithoutChoices(String),
    #[error("sample {0}: choices present without answer_index")]
    ChoicesWithoutIndex(String),
    #[error("sample {0}: fewer than two choices")]
    TooFewChoices(String),
    #[error("sample {0}: choices are not pairwise distinct")]
    DuplicateChoices(String),
    #[error("sample {id}: answer appears {occurrences} times among choices")]
    AnswerNotExactlyOnce { id: String, occurrences: usize },
    #[error("sample {0}: answer_index does not point at the answer")]
    IndexMismatch(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> QASample {
        QASample {
            id: "rl-00001-collision_counting".into(),
            video_path: "videos/x.mp4".into(),
            metadata_path: "videos/x.json".into(),
            kind: SampleKind::ShortTerm { task_type: TaskType::CollisionCounting },
            question: "How many times does the red circle hit the walls?".into(),
            answer: "3".into(),
            choices: Some(vec!["2".into(), "4".into(), "3".into(), "5".into()]),
            answer_index: Some(2),
            cot: None,
        }
    }

    #[test]
    fn valid_sample_passes() {
        sample().validate().unwrap();
    }

    #[test]
    fn answer_must_appear_exactly_once() {
        let mut s = sample();
        s.choices = Some(vec!["3".into(), "3".into(), "4".into(), "5".into()]);
        assert!(matches!(
            s.validate(),
            Err(QaInvariantError::DuplicateChoices(_))
        ));
        s.choices = Some(vec!["1".into(), "2".into(), "4".into(), "5".into()]);
        s.answer_index = Some(0);
        assert!(matches!(
            s.validate(),
            Err(QaInvariantError::AnswerNotExactlyOnce { occurrences: 0, .. })
        ));
    }

    #[test]
    fn index_must_point_at_answer() {
        let mut s = sample();
        s.answer_index = Some(1);
        assert!(matches!(s.validate(), Err(QaInvariantError::IndexMismatch(_))));
    }

    #[test]
    fn kind_serializes_flat() {
        let json = serde_json::to_value(sample()).unwrap();
        assert_eq!(json["category"], "short_term");
        assert_eq!(json["task_type"], "collision_counting");
    }
}
