//! Short-term scene parameterization.
//!
//! A [`SceneSpec`] fully determines one continuous-motion clip: canvas,
//! timing, and the kinematic program of every object. The simulator turns
//! it into a frame-by-frame trace; regenerating from the same spec always
//! yields the same video and ground truth.

use crate::geom::{Canvas, Vec2};
use crate::palette::ColorName;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Highest object speed a valid spec may request, px/s.
pub const MAX_SPEED: f64 = 400.0;
/// Highest spin rate a valid spec may request, deg/s.
pub const MAX_ANGULAR_SPEED: f64 = 720.0;

/// The twelve short-term perceptual task categories.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum TaskType {
    CollisionCounting,
    DirectionIdentification,
    TrajectoryRecognition,
    SpeedPerception,
    MotionCounting,
    AttributeChange,
    RotationPerception,
    RelativePosition,
    AccelerationDetection,
    VelocityComparison,
    DistanceEstimation,
    SequentialOrdering,
}

impl TaskType {
    pub const ALL: [TaskType; 12] = [
        TaskType::CollisionCounting,
        TaskType::DirectionIdentification,
        TaskType::TrajectoryRecognition,
        TaskType::SpeedPerception,
        TaskType::MotionCounting,
        TaskType::AttributeChange,
        TaskType::RotationPerception,
        TaskType::RelativePosition,
        TaskType::AccelerationDetection,
        TaskType::VelocityComparison,
        TaskType::DistanceEstimation,
        TaskType::SequentialOrdering,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            TaskType::CollisionCounting => "collision_counting",
            TaskType::DirectionIdentification => "direction_identification",
            TaskType::TrajectoryRecognition => "trajectory_recognition",
            TaskType::SpeedPerception => "speed_perception",
            TaskType::MotionCounting => "motion_counting",
            TaskType::AttributeChange => "attribute_change",
            TaskType::RotationPerception => "rotation_perception",
            TaskType::RelativePosition => "relative_position",
            TaskType::AccelerationDetection => "acceleration_detection",
            TaskType::VelocityComparison => "velocity_comparison",
            TaskType::DistanceEstimation => "distance_estimation",
            TaskType::SequentialOrdering => "sequential_ordering",
        }
    }
}

/// Object glyph shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Circle,
    Square,
    Triangle,
    Star,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::Circle, Shape::Square, Shape::Triangle, Shape::Star];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Circle => "circle",
            Shape::Square => "square",
            Shape::Triangle => "triangle",
            Shape::Star => "star",
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which visual attribute a scheduled change touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributeKind {
    Color,
    Size,
    Shape,
}

impl AttributeKind {
    pub fn name(self) -> &'static str {
        match self {
            AttributeKind::Color => "color",
            AttributeKind::Size => "size",
            AttributeKind::Shape => "shape",
        }
    }
}

/// New value carried by a scheduled attribute change.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributeValue {
    Color(ColorName),
    Size(f64),
    Shape(Shape),
}

impl AttributeValue {
    pub fn kind(self) -> AttributeKind {
        match self {
            AttributeValue::Color(_) => AttributeKind::Color,
            AttributeValue::Size(_) => AttributeKind::Size,
            AttributeValue::Shape(_) => AttributeKind::Shape,
        }
    }
}

/// One scheduled attribute change; takes effect at the frame nearest
/// `time_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttributeChange {
    pub time_s: f64,
    pub attribute: AttributeKind,
    pub new_value: AttributeValue,
}

/// One scheduled instantaneous heading turn (zigzag legs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeadingChange {
    pub time_s: f64,
    pub turn_deg: f64,
}

/// Half-open interval of seconds `[start_s, end_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeSpan {
    pub start_s: f64,
    pub end_s: f64,
}

impl TimeSpan {
    pub fn contains(self, t: f64) -> bool {
        t >= self.start_s && t < self.end_s
    }
}

/// One object's appearance and kinematic program.
///
/// Beyond the constant-velocity base, three optional fields realize the
/// task families that need non-uniform motion: `tangential_accel` scales
/// speed linearly over time (speed-change tasks), `turn_rate` rotates the
/// heading continuously (circular paths), and `heading_changes` applies
/// discrete turns (zigzag paths). `active_spans`, when non-empty, gates
/// motion to those intervals (discrete movement events).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub id: String,
    pub shape: Shape,
    pub color: ColorName,
    /// Radius (circle/triangle/star circumradius) or half-extent (square), px.
    pub size: f64,
    pub position: Vec2,
    pub velocity: Vec2,
    /// Spin rate of the glyph, deg/s. Positive = counter-clockwise on screen.
    #[serde(default)]
    pub angular_velocity: f64,
    /// Speed change along the heading, px/s².
    #[serde(default)]
    pub tangential_accel: f64,
    /// Continuous heading rotation, deg/s.
    #[serde(default)]
    pub turn_rate: f64,
    #[serde(default)]
    pub heading_changes: Vec<HeadingChange>,
    #[serde(default)]
    pub active_spans: Vec<TimeSpan>,
    #[serde(default)]
    pub attribute_schedule: Vec<AttributeChange>,
}

impl ObjectSpec {
    /// Human-readable descriptor used in questions, e.g. "red circle".
    pub fn label(&self) -> String {
        format!("{} {}", self.color, self.shape)
    }

    /// True when the object moves at time `t` (empty spans = always).
    pub fn active_at(&self, t: f64) -> bool {
        self.active_spans.is_empty() || self.active_spans.iter().any(|s| s.contains(t))
    }
}

/// Full parameterization of a short-term motion clip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub seed: u64,
    pub canvas: Canvas,
    pub duration_s: f64,
    pub fps: u32,
    pub objects: Vec<ObjectSpec>,
    pub task_type: TaskType,
}

impl SceneSpec {
    /// Number of frames the simulation of this spec produces.
    pub fn frame_count(&self) -> usize {
        (self.duration_s * self.fps as f64).ceil() as usize
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.duration_s <= 0.0 {
            return Err(SpecError::NonPositiveDuration(self.duration_s));
        }
        if self.fps == 0 {
            return Err(SpecError::ZeroFps);
        }
        if self.canvas.width < 64 || self.canvas.height < 64 {
            return Err(SpecError::CanvasTooSmall {
                width: self.canvas.width,
                height: self.canvas.height,
            });
        }
        if self.objects.is_empty() {
            return Err(SpecError::NoObjects);
        }
        let mut ids = std::collections::BTreeSet::new();
        for obj in &self.objects {
            if !ids.insert(obj.id.as_str()) {
                return Err(SpecError::DuplicateObjectId(obj.id.clone()));
            }
            if obj.size <= 0.0 {
                return Err(SpecError::NonPositiveSize(obj.id.clone()));
            }
            if !self.canvas.contains(obj.position) {
                return Err(SpecError::PositionOutsideCanvas(obj.id.clone()));
            }
            if obj.velocity.length() > MAX_SPEED {
                return Err(SpecError::SpeedOutOfBounds(obj.id.clone()));
            }
            if obj.angular_velocity.abs() > MAX_ANGULAR_SPEED {
                return Err(SpecError::AngularSpeedOutOfBounds(obj.id.clone()));
            }
            let mut last = f64::NEG_INFINITY;
            for change in &obj.attribute_schedule {
                if change.time_s <= last {
                    return Err(SpecError::ScheduleNotIncreasing(obj.id.clone()));
                }
                if change.time_s >= self.duration_s {
                    return Err(SpecError::ScheduleBeyondDuration(obj.id.clone()));
                }
                if change.new_value.kind() != change.attribute {
                    return Err(SpecError::ScheduleValueMismatch(obj.id.clone()));
                }
                last = change.time_s;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("duration must be positive, got {0}")]
    NonPositiveDuration(f64),
    #[error("fps must be positive")]
    ZeroFps,
    #[error("canvas {width}x{height} below 64x64 minimum")]
    CanvasTooSmall { width: u32, height: u32 },
    #[error("scene has no objects")]
    NoObjects,
    #[error("duplicate object id {0:?}")]
    DuplicateObjectId(String),
    #[error("object {0:?} has non-positive size")]
    NonPositiveSize(String),
    #[error("object {0:?} starts outside the canvas")]
    PositionOutsideCanvas(String),
    #[error("object {0:?} exceeds the speed bound")]
    SpeedOutOfBounds(String),
    #[error("object {0:?} exceeds the angular speed bound")]
    AngularSpeedOutOfBounds(String),
    #[error("object {0:?} attribute schedule times not strictly increasing")]
    ScheduleNotIncreasing(String),
    #[error("object {0:?} attribute schedule extends past the clip")]
    ScheduleBeyondDuration(String),
    #[error("object {0:?} attribute schedule value does not match its kind")]
    ScheduleValueMismatch(String),
}

/// Difficulty profile for generated scenes and scenarios. The hard profile
/// doubles clip duration and operation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Difficulty {
    #[default]
    Standard,
    Hard,
}

impl Difficulty {
    pub fn slug(self) -> &'static str {
        match self {
            Difficulty::Standard => "standard",
            Difficulty::Hard => "hard",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_spec() -> SceneSpec {
        SceneSpec {
            seed: 1,
            canvas: Canvas::default(),
            duration_s: 4.0,
            fps: 30,
            objects: vec![ObjectSpec {
                id: "obj0".into(),
                shape: Shape::Circle,
                color: ColorName::Red,
                size: 16.0,
                position: Vec2::new(224.0, 224.0),
                velocity: Vec2::new(100.0, 0.0),
                angular_velocity: 0.0,
                tangential_accel: 0.0,
                turn_rate: 0.0,
                heading_changes: vec![],
                active_spans: vec![],
                attribute_schedule: vec![],
            }],
            task_type: TaskType::CollisionCounting,
        }
    }

    #[test]
    fn valid_spec_passes() {
        base_spec().validate().unwrap();
    }

    #[test]
    fn rejects_position_outside_canvas() {
        let mut spec = base_spec();
        spec.objects[0].position = Vec2::new(-3.0, 10.0);
        assert!(matches!(
            spec.validate(),
            Err(SpecError::PositionOutsideCanvas(_))
        ));
    }

    #[test]
    fn rejects_unsorted_schedule() {
        let mut spec = base_spec();
        spec.objects[0].attribute_schedule = vec![
            AttributeChange {
                time_s: 2.0,
                attribute: AttributeKind::Color,
                new_value: AttributeValue::Color(ColorName::Blue),
            },
            AttributeChange {
                time_s: 1.0,
                attribute: AttributeKind::Color,
                new_value: AttributeValue::Color(ColorName::Green),
            },
        ];
        assert!(matches!(
            spec.validate(),
            Err(SpecError::ScheduleNotIncreasing(_))
        ));
    }

    #[test]
    fn frame_count_is_ceiling() {
        let mut spec = base_spec();
        assert_eq!(spec.frame_count(), 120);
        spec.duration_s = 4.01;
        assert_eq!(spec.frame_count(), 121);
    }
}
