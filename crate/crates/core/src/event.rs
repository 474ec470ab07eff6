//! Frame-indexed event log.
//!
//! Every discrete thing that happens in a video — a wall contact, a heading
//! change, an applied operation, a phase boundary — is recorded as an
//! [`EventRecord`] pinned to the exact frame where it takes effect. The log
//! is the source the sidecar timeline, ground-truth derivation, and CoT
//! verification all read from.

use crate::geom::Vec2;
use crate::scene::AttributeKind;
use serde::{Deserialize, Serialize};

/// Event categories. The derived `Ord` (declaration order) is the
/// tie-breaking order within a frame.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    WallContact,
    DirectionChange,
    AttributeChange,
    RotationComplete,
    OperationApplied,
    PhaseBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WallSide {
    Left,
    Right,
    Top,
    Bottom,
}

impl WallSide {
    pub fn name(self) -> &'static str {
        match self {
            WallSide::Left => "left",
            WallSide::Right => "right",
            WallSide::Top => "top",
            WallSide::Bottom => "bottom",
        }
    }
}

/// Kind-specific event detail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EventPayload {
    WallContact { side: WallSide },
    DirectionChange { from: Vec2, to: Vec2 },
    AttributeChange { attribute: AttributeKind, old: String, new: String },
    RotationComplete { completed: u32 },
    OperationApplied { op_index: usize, description: String },
    PhaseBoundary { phase: String },
}

impl EventPayload {
    pub fn kind(&self) -> EventKind {
        match self {
            EventPayload::WallContact { .. } => EventKind::WallContact,
            EventPayload::DirectionChange { .. } => EventKind::DirectionChange,
            EventPayload::AttributeChange { .. } => EventKind::AttributeChange,
            EventPayload::RotationComplete { .. } => EventKind::RotationComplete,
            EventPayload::OperationApplied { .. } => EventKind::OperationApplied,
            EventPayload::PhaseBoundary { .. } => EventKind::PhaseBoundary,
        }
    }
}

/// One logged event, pinned to a frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub frame_index: u32,
    /// Always exactly `frame_index / fps`.
    pub time_s: f64,
    pub kind: EventKind,
    /// Object or entity the event concerns ("scene" for global events).
    pub subject: String,
    pub payload: EventPayload,
}

impl EventRecord {
    pub fn new(frame_index: u32, fps: u32, subject: impl Into<String>, payload: EventPayload) -> Self {
        EventRecord {
            frame_index,
            time_s: frame_index as f64 / fps as f64,
            kind: payload.kind(),
            subject: subject.into(),
            payload,
        }
    }

    fn sort_key(&self) -> (u32, &str, EventKind) {
        (self.frame_index, self.subject.as_str(), self.kind)
    }
}

/// Sorts a log into canonical order: frame index, then subject id, then
/// kind. The sort is stable, so same-key events keep insertion order.
pub fn sort_events(events: &mut [EventRecord]) {
    events.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// True when the log is already in canonical order.
pub fn events_sorted(events: &[EventRecord]) -> bool {
    events.windows(2).all(|w| w[0].sort_key() <= w[1].sort_key())
}

/// Millisecond timestamp for a frame, "MM:SS.mmm".
pub fn format_timestamp_ms(frame_index: u32, fps: u32) -> String {
    let total_ms = (frame_index as u64 * 1000 + fps as u64 / 2) / fps as u64;
    let minutes = total_ms / 60_000;
    let seconds = (total_ms % 60_000) / 1000;
    let millis = total_ms % 1000;
    format!("{minutes:02}:{seconds:02}.{millis:03}")
}

/// Whole-second timestamp for a frame, "MM:SS" (used for on-frame overlays).
pub fn format_timestamp_s(frame_index: u32, fps: u32) -> String {
    let total_s = frame_index as u64 / fps as u64;
    format!("{:02}:{:02}", total_s / 60, total_s % 60)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timestamps_format_exactly() {
        assert_eq!(format_timestamp_ms(60, 30), "00:02.000");
        assert_eq!(format_timestamp_ms(61, 30), "00:02.033");
        assert_eq!(format_timestamp_ms(0, 30), "00:00.000");
        assert_eq!(format_timestamp_ms(30 * 61, 30), "01:01.000");
        assert_eq!(format_timestamp_s(59, 30), "00:01");
        assert_eq!(format_timestamp_s(60, 30), "00:02");
    }

    #[test]
    fn time_is_frame_over_fps() {
        let e = EventRecord::new(
            45,
            30,
            "obj0",
            EventPayload::WallContact { side: WallSide::Left },
        );
        assert_eq!(e.time_s, 45.0 / 30.0);
        assert_eq!(e.kind, EventKind::WallContact);
    }

    #[test]
    fn sorting_breaks_ties_by_subject_then_kind() {
        let mk = |frame, subject: &str, payload| EventRecord::new(frame, 30, subject, payload);
        let mut events = vec![
            mk(5, "b", EventPayload::WallContact { side: WallSide::Top }),
            mk(5, "a", EventPayload::PhaseBoundary { phase: "x".into() }),
            mk(
                5,
                "a",
                EventPayload::WallContact { side: WallSide::Left },
            ),
            mk(2, "z", EventPayload::WallContact { side: WallSide::Right }),
        ];
        sort_events(&mut events);
        assert!(events_sorted(&events));
        assert_eq!(events[0].subject, "z");
        assert_eq!(events[1].subject, "a");
        assert_eq!(events[1].kind, EventKind::WallContact);
        assert_eq!(events[2].kind, EventKind::PhaseBoundary);
        assert_eq!(events[3].subject, "b");
    }
}
