//! Per-video metadata sidecar.
//!
//! One JSON document per video, stored next to it (same path, `.json`
//! extension). It carries the full parameterization, the event timeline
//! with millisecond timestamps, endpoint states for scenarios, and the
//! canonical ground truth — everything downstream consumers (validation,
//! CoT prompting, reward checking) need without re-rendering.

use crate::answer::GroundTruth;
use crate::event::{format_timestamp_ms, EventRecord};
use crate::scene::SceneSpec;
use crate::script::ScenarioScript;
use serde::{Deserialize, Serialize};

pub const SIDECAR_SCHEMA_VERSION: u32 = 1;

/// The generating description of the video.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SceneDef {
    ShortTerm(SceneSpec),
    LongTerm(ScenarioScript),
}

/// One timeline row: the event plus its human-readable timestamp.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineEntry {
    pub timestamp: String,
    pub event: EventRecord,
}

/// Encoder settings recorded for provenance when a video was encoded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncoderInfo {
    pub tool: String,
    pub codec: String,
    pub crf: u32,
    pub preset: String,
}

/// The sidecar document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub schema_version: u32,
    pub generator_version: String,
    pub seed: u64,
    pub scene: SceneDef,
    pub timeline: Vec<TimelineEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_state: Option<String>,
    pub ground_truth: GroundTruth,
    /// Canonical answer text, denormalized for tamper checks.
    pub answer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoder: Option<EncoderInfo>,
}

impl Sidecar {
    pub fn new(seed: u64, scene: SceneDef, events: &[EventRecord], ground_truth: GroundTruth) -> Self {
        let fps = match &scene {
            SceneDef::ShortTerm(spec) => spec.fps,
            SceneDef::LongTerm(_) => 30,
        };
        Self::with_fps(seed, scene, events, ground_truth, fps)
    }

    /// Builds the document, deriving the timeline from the (sorted) events.
    pub fn with_fps(
        seed: u64,
        scene: SceneDef,
        events: &[EventRecord],
        ground_truth: GroundTruth,
        fps: u32,
    ) -> Self {
        let timeline = events
            .iter()
            .map(|event| TimelineEntry {
                timestamp: format_timestamp_ms(event.frame_index, fps),
                event: event.clone(),
            })
            .collect();
        let (initial_state, final_state) = match &scene {
            SceneDef::ShortTerm(_) => (None, None),
            SceneDef::LongTerm(script) => (
                Some(script.initial.canonical_text()),
                Some(script.final_state.canonical_text()),
            ),
        };
        let answer = ground_truth.answer_text();
        Sidecar {
            schema_version: SIDECAR_SCHEMA_VERSION,
            generator_version: crate::GENERATOR_VERSION.to_string(),
            seed,
            scene,
            timeline,
            initial_state,
            final_state,
            ground_truth,
            answer,
            encoder: None,
        }
    }

    pub fn to_json_pretty(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::answer::AnswerValue;
    use crate::event::{EventPayload, WallSide};
    use crate::geom::{Canvas, Vec2};
    use crate::palette::ColorName;
    use crate::scene::{ObjectSpec, Shape, TaskType};

    #[test]
    fn timeline_uses_millisecond_timestamps() {
        let spec = SceneSpec {
            seed: 3,
            canvas: Canvas::default(),
            duration_s: 4.0,
            fps: 30,
            objects: vec![ObjectSpec {
                id: "obj0".into(),
                shape: Shape::Circle,
                color: ColorName::Red,
                size: 10.0,
                position: Vec2::new(100.0, 100.0),
                velocity: Vec2::new(50.0, 0.0),
                angular_velocity: 0.0,
                tangential_accel: 0.0,
                turn_rate: 0.0,
                heading_changes: vec![],
                active_spans: vec![],
                attribute_schedule: vec![],
            }],
            task_type: TaskType::CollisionCounting,
        };
        let events = vec![EventRecord::new(
            60,
            30,
            "obj0",
            EventPayload::WallContact { side: WallSide::Right },
        )];
        let sidecar = Sidecar::new(
            3,
            SceneDef::ShortTerm(spec),
            &events,
            GroundTruth::new(AnswerValue::Count(1)),
        );
        assert_eq!(sidecar.timeline[0].timestamp, "00:02.000");
        assert_eq!(sidecar.answer, "1");

        let json = sidecar.to_json_pretty().unwrap();
        let back = Sidecar::from_json(&json).unwrap();
        assert_eq!(back, sidecar);
    }
}
