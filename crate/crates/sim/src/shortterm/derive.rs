//! Ground-truth answer derivation from simulation traces.
//!
//! Each task type reads the trace (never the generator's intent) and
//! produces the canonical answer, erroring out when the scene is ambiguous
//! under the task's margins so the generator can discard and retry it.
//! Margins here are the single source of truth — the per-task generators
//! aim well inside them.

use super::classify::{classify_trajectory, ClassifyError};
use super::trace::SimulationTrace;
use tempogen_core::{
    AnswerValue, AttributeKind, Compass8, DistanceChange, EventKind, EventPayload, GroundTruth,
    RelativeDir, SceneSpec, SpeedComparison, SpeedTrend, TaskType, Vec2,
};
use thiserror::Error;

/// Speed ratio regarded as a clear difference when comparing objects.
const SPEED_RATIO_MARGIN: f64 = 1.2;
/// Speed gain/loss ratio required to call a trend (50% gain or the
/// mirror-image loss).
const TREND_RATIO: f64 = 1.5;
/// Max speed wobble still considered constant.
const CONSTANT_RATIO: f64 = 1.02;
/// Dominant-axis factor for relative position calls.
const AXIS_DOMINANCE: f64 = 2.0;
/// Minimum separation (px) for relative-position calls.
const MIN_SEPARATION: f64 = 40.0;
/// Distance ratio for closer/farther calls, and wobble band for
/// "unchanged".
const DISTANCE_RATIO: f64 = 1.3;
const DISTANCE_UNCHANGED_BAND: f64 = 1.02;
/// Degrees the mean heading must clear a compass boundary by.
const HEADING_MARGIN_DEG: f64 = 1.0;
/// Degrees the final rotation must clear a full-turn boundary by.
const ROTATION_MARGIN_DEG: f64 = 20.0;

#[derive(Debug, Error)]
pub enum AnswerError {
    #[error("task/spec mismatch: {0}")]
    Mismatch(String),
    #[error("ambiguous scene: {0}")]
    Ambiguous(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Derives the canonical ground truth for `spec`'s task from its trace.
pub fn derive_answer(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    match spec.task_type {
        TaskType::CollisionCounting => collision_counting(spec, trace),
        TaskType::DirectionIdentification => direction_identification(spec, trace),
        TaskType::TrajectoryRecognition => trajectory_recognition(spec, trace),
        TaskType::SpeedPerception => speed_perception(spec, trace),
        TaskType::MotionCounting => motion_counting(spec, trace),
        TaskType::AttributeChange => attribute_change(spec, trace),
        TaskType::RotationPerception => rotation_perception(spec, trace),
        TaskType::RelativePosition => relative_position(spec, trace),
        TaskType::AccelerationDetection => acceleration_detection(spec, trace),
        TaskType::VelocityComparison => velocity_comparison(spec, trace),
        TaskType::DistanceEstimation => distance_estimation(spec, trace),
        TaskType::SequentialOrdering => sequential_ordering(spec, trace),
    }
}

fn subject_label(spec: &SceneSpec) -> String {
    spec.objects[0].label()
}

fn collision_counting(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    let subject = &spec.objects[0].id;
    let count = trace
        .events
        .iter()
        .filter(|e| e.kind == EventKind::WallContact && e.subject == *subject)
        .count() as u32;
    Ok(GroundTruth::new(AnswerValue::Count(count)).with_field("subject", subject_label(spec)))
}

fn direction_identification(
    spec: &SceneSpec,
    trace: &SimulationTrace,
) -> Result<GroundTruth, AnswerError> {
    let object = &trace.objects[0];
    let moving: Vec<Vec2> = object
        .velocities
        .iter()
        .copied()
        .filter(|v| v.length() > 1e-9)
        .collect();
    if moving.is_empty() {
        return Err(AnswerError::Mismatch("direction task with a stationary object".into()));
    }
    let mean = moving.iter().fold(Vec2::ZERO, |acc, v| acc + *v) * (1.0 / moving.len() as f64);
    let heading = mean.heading_deg();
    if Compass8::boundary_margin_deg(heading) < HEADING_MARGIN_DEG {
        return Err(AnswerError::Ambiguous(format!(
            "mean heading {heading:.2} sits on a compass boundary"
        )));
    }
    Ok(GroundTruth::new(AnswerValue::Direction(Compass8::from_heading_deg(heading)))
        .with_field("subject", subject_label(spec)))
}

fn trajectory_recognition(
    spec: &SceneSpec,
    trace: &SimulationTrace,
) -> Result<GroundTruth, AnswerError> {
    let class = classify_trajectory(trace, &spec.objects[0].id)?;
    Ok(GroundTruth::new(AnswerValue::Trajectory(class)).with_field("subject", subject_label(spec)))
}

fn mean_displacements(trace: &SimulationTrace) -> Vec<f64> {
    trace.objects.iter().map(|o| o.mean_frame_displacement()).collect()
}

fn speed_perception(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    if spec.objects.len() != 2 {
        return Err(AnswerError::Mismatch("speed perception needs exactly two objects".into()));
    }
    let speeds = mean_displacements(trace);
    let (subject, reference) = (speeds[0], speeds[1]);
    if reference < 1e-9 || subject < 1e-9 {
        return Err(AnswerError::Mismatch("speed perception with a stationary object".into()));
    }
    let ratio = subject / reference;
    let answer = if ratio >= SPEED_RATIO_MARGIN {
        SpeedComparison::Faster
    } else if ratio <= 1.0 / SPEED_RATIO_MARGIN {
        SpeedComparison::Slower
    } else {
        return Err(AnswerError::Ambiguous(format!("speed ratio {ratio:.3} too close to call")));
    };
    Ok(GroundTruth::new(AnswerValue::SpeedComparison(answer))
        .with_field("subject", spec.objects[0].label())
        .with_field("reference", spec.objects[1].label()))
}

fn motion_counting(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    let subject = &spec.objects[0].id;
    let onsets = trace
        .events
        .iter()
        .filter(|e| {
            e.subject == *subject
                && matches!(
                    &e.payload,
                    EventPayload::DirectionChange { from, .. } if from.length() < 1e-12
                )
        })
        .count() as u32;
    if onsets == 0 {
        return Err(AnswerError::Mismatch("motion counting with no movement bursts".into()));
    }
    Ok(GroundTruth::new(AnswerValue::Count(onsets)).with_field("subject", subject_label(spec)))
}

fn attribute_change(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    let subject = &spec.objects[0].id;
    let changes: Vec<&EventPayload> = trace
        .events
        .iter()
        .filter(|e| e.kind == EventKind::AttributeChange && e.subject == *subject)
        .map(|e| &e.payload)
        .collect();
    let [payload] = changes.as_slice() else {
        return Err(AnswerError::Mismatch(format!(
            "attribute task expects exactly one change, saw {}",
            changes.len()
        )));
    };
    let EventPayload::AttributeChange { attribute, old, new } = payload else {
        unreachable!("filtered on kind");
    };
    let outcome = match attribute {
        AttributeKind::Color | AttributeKind::Shape => new.clone(),
        AttributeKind::Size => {
            let old: f64 = old.parse().unwrap_or(0.0);
            let new: f64 = new.parse().unwrap_or(0.0);
            if new > old { "larger".to_string() } else { "smaller".to_string() }
        }
    };
    Ok(GroundTruth::new(AnswerValue::AttributeOutcome(outcome))
        .with_field("subject", subject_label(spec))
        .with_field("attribute", attribute.name()))
}

fn rotation_perception(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    let object = &trace.objects[0];
    if spec.objects[0].angular_velocity == 0.0 {
        return Err(AnswerError::Mismatch("rotation task with zero angular velocity".into()));
    }
    let total = object.cumulative_rotation.last().copied().unwrap_or(0.0).abs();
    let remainder = total % 360.0;
    if remainder < ROTATION_MARGIN_DEG || remainder > 360.0 - ROTATION_MARGIN_DEG {
        return Err(AnswerError::Ambiguous(format!(
            "total rotation {total:.1} ends too close to a full turn"
        )));
    }
    let turns = (total / 360.0).floor() as u32;
    Ok(GroundTruth::new(AnswerValue::Count(turns)).with_field("subject", subject_label(spec)))
}

fn relative_position(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    if spec.objects.len() != 2 {
        return Err(AnswerError::Mismatch("relative position needs exactly two objects".into()));
    }
    let a = *trace.objects[0].positions.last().unwrap();
    let b = *trace.objects[1].positions.last().unwrap();
    let (dx, dy) = (a.x - b.x, a.y - b.y);
    let answer = if dx.abs() >= AXIS_DOMINANCE * dy.abs() && dx.abs() >= MIN_SEPARATION {
        if dx < 0.0 { RelativeDir::LeftOf } else { RelativeDir::RightOf }
    } else if dy.abs() >= AXIS_DOMINANCE * dx.abs() && dy.abs() >= MIN_SEPARATION {
        if dy < 0.0 { RelativeDir::Above } else { RelativeDir::Below }
    } else {
        return Err(AnswerError::Ambiguous(format!(
            "final offset ({dx:.0}, {dy:.0}) has no dominant axis"
        )));
    };
    Ok(GroundTruth::new(AnswerValue::RelativeDir(answer))
        .with_field("subject", spec.objects[0].label())
        .with_field("reference", spec.objects[1].label())
        .with_field("timestamp", "the end of the video"))
}

fn acceleration_detection(
    spec: &SceneSpec,
    trace: &SimulationTrace,
) -> Result<GroundTruth, AnswerError> {
    let speeds: Vec<f64> = trace.objects[0].velocities.iter().map(|v| v.length()).collect();
    let first = *speeds.first().unwrap();
    let last = *speeds.last().unwrap();
    if first < 1e-9 {
        return Err(AnswerError::Mismatch("acceleration task with a stationary object".into()));
    }
    let strictly_increasing = speeds.windows(2).all(|w| w[1] > w[0] + 1e-12);
    let strictly_decreasing = speeds.windows(2).all(|w| w[1] < w[0] - 1e-12);
    let max = speeds.iter().copied().fold(f64::MIN, f64::max);
    let min = speeds.iter().copied().fold(f64::MAX, f64::min);

    let trend = if strictly_increasing && last / first >= TREND_RATIO {
        SpeedTrend::SpeedingUp
    } else if strictly_decreasing && first / last >= TREND_RATIO {
        SpeedTrend::SlowingDown
    } else if max / min <= CONSTANT_RATIO {
        SpeedTrend::ConstantSpeed
    } else {
        return Err(AnswerError::Ambiguous(format!(
            "speed profile {first:.1}->{last:.1} is neither a clear trend nor constant"
        )));
    };
    Ok(GroundTruth::new(AnswerValue::SpeedTrend(trend)).with_field("subject", subject_label(spec)))
}

fn velocity_comparison(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    if spec.objects.len() < 3 {
        return Err(AnswerError::Mismatch("velocity comparison needs at least three objects".into()));
    }
    let speeds = mean_displacements(trace);
    let mut order: Vec<usize> = (0..speeds.len()).collect();
    order.sort_by(|&a, &b| speeds[b].partial_cmp(&speeds[a]).unwrap());
    let (fastest, runner_up) = (order[0], order[1]);
    if speeds[runner_up] < 1e-9
        || speeds[fastest] / speeds[runner_up] < SPEED_RATIO_MARGIN
    {
        return Err(AnswerError::Ambiguous("fastest object does not stand out".into()));
    }
    let mut truth = GroundTruth::new(AnswerValue::ObjectLabel(spec.objects[fastest].label()));
    for (slot, idx) in order.iter().enumerate() {
        truth = truth.with_field(&format!("rank_{slot}"), spec.objects[*idx].label());
    }
    Ok(truth)
}

fn distance_estimation(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    if spec.objects.len() != 2 {
        return Err(AnswerError::Mismatch("distance estimation needs exactly two objects".into()));
    }
    let a = &trace.objects[0].positions;
    let b = &trace.objects[1].positions;
    let d_start = a[0].distance(b[0]);
    let d_end = a.last().unwrap().distance(*b.last().unwrap());
    if d_start < 1e-6 {
        return Err(AnswerError::Mismatch("objects start at the same point".into()));
    }
    let ratio = d_end / d_start;
    let change = if ratio <= 1.0 / DISTANCE_RATIO {
        DistanceChange::Closer
    } else if ratio >= DISTANCE_RATIO {
        DistanceChange::Farther
    } else if (1.0 / DISTANCE_UNCHANGED_BAND..=DISTANCE_UNCHANGED_BAND).contains(&ratio) {
        DistanceChange::Unchanged
    } else {
        return Err(AnswerError::Ambiguous(format!(
            "distance ratio {ratio:.3} falls between categories"
        )));
    };
    Ok(GroundTruth::new(AnswerValue::DistanceChange(change))
        .with_field("subject", spec.objects[0].label())
        .with_field("reference", spec.objects[1].label())
        .with_field("timestamp", "the end of the video"))
}

fn sequential_ordering(spec: &SceneSpec, trace: &SimulationTrace) -> Result<GroundTruth, AnswerError> {
    let mut changes: Vec<(u32, &str)> = trace
        .events
        .iter()
        .filter(|e| e.kind == EventKind::AttributeChange)
        .map(|e| (e.frame_index, e.subject.as_str()))
        .collect();
    if changes.len() != spec.objects.len() || changes.len() < 3 {
        return Err(AnswerError::Mismatch(format!(
            "sequential ordering expects one change per object, saw {}",
            changes.len()
        )));
    }
    changes.sort();
    if changes.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(AnswerError::Ambiguous("two change events share a frame".into()));
    }
    let labels: Vec<String> = changes
        .iter()
        .map(|(_, id)| {
            spec.objects
                .iter()
                .find(|o| o.id == *id)
                .map(|o| o.label())
                .unwrap_or_else(|| id.to_string())
        })
        .collect();
    Ok(GroundTruth::new(AnswerValue::EventOrder(labels)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shortterm::simulate;
    use tempogen_core::{
        AttributeChange, AttributeValue, Canvas, ColorName, ObjectSpec, Shape, TimeSpan,
    };

    fn object(id: &str, color: ColorName, pos: Vec2, vel: Vec2) -> ObjectSpec {
        ObjectSpec {
            id: id.into(),
            shape: Shape::Circle,
            color,
            size: 12.0,
            position: pos,
            velocity: vel,
            angular_velocity: 0.0,
            tangential_accel: 0.0,
            turn_rate: 0.0,
            heading_changes: vec![],
            active_spans: vec![],
            attribute_schedule: vec![],
        }
    }

    fn scene(task_type: TaskType, objects: Vec<ObjectSpec>, duration_s: f64) -> SceneSpec {
        SceneSpec {
            seed: 0,
            canvas: Canvas::new(448, 448),
            duration_s,
            fps: 30,
            objects,
            task_type,
        }
    }

    #[test]
    fn rotation_answer_is_full_turns() {
        // 200 deg/s for 4 s → 793.3 total at the last frame → 2 full turns.
        let mut obj = object("obj0", ColorName::Red, Vec2::new(224.0, 224.0), Vec2::ZERO);
        obj.angular_velocity = 200.0;
        let spec = scene(TaskType::RotationPerception, vec![obj], 4.0);
        let trace = simulate(&spec).unwrap();
        let truth = derive_answer(&spec, &trace).unwrap();
        assert_eq!(truth.value, AnswerValue::Count(2));
    }

    #[test]
    fn faster_object_wins_speed_comparison() {
        // Displacement-ranking oracle: with no walls hit, mean displacement
        // per frame is speed/fps, so the 150 px/s object must rank first.
        let spec = scene(
            TaskType::VelocityComparison,
            vec![
                object("obj0", ColorName::Red, Vec2::new(100.0, 100.0), Vec2::new(50.0, 0.0)),
                object("obj1", ColorName::Blue, Vec2::new(100.0, 224.0), Vec2::new(150.0, 0.0)),
                object("obj2", ColorName::Green, Vec2::new(100.0, 348.0), Vec2::new(100.0, 0.0)),
            ],
            2.0,
        );
        let trace = simulate(&spec).unwrap();
        let speeds: Vec<f64> = trace.objects.iter().map(|o| o.mean_frame_displacement()).collect();
        assert!(speeds[1] > speeds[2] && speeds[2] > speeds[0]);
        let truth = derive_answer(&spec, &trace).unwrap();
        assert_eq!(truth.value, AnswerValue::ObjectLabel("blue circle".into()));
    }

    #[test]
    fn collision_answer_equals_wall_contact_events() {
        let spec = scene(
            TaskType::CollisionCounting,
            vec![object("obj0", ColorName::Red, Vec2::new(224.0, 224.0), Vec2::new(190.0, 65.0))],
            5.0,
        );
        let trace = simulate(&spec).unwrap();
        let expected = trace.events.iter().filter(|e| e.kind == EventKind::WallContact).count();
        let truth = derive_answer(&spec, &trace).unwrap();
        assert_eq!(truth.value, AnswerValue::Count(expected as u32));
    }

    #[test]
    fn equal_speeds_are_rejected_as_ambiguous() {
        let spec = scene(
            TaskType::SpeedPerception,
            vec![
                object("obj0", ColorName::Red, Vec2::new(100.0, 100.0), Vec2::new(80.0, 0.0)),
                object("obj1", ColorName::Blue, Vec2::new(100.0, 300.0), Vec2::new(0.0, 80.0)),
            ],
            3.0,
        );
        let trace = simulate(&spec).unwrap();
        assert!(matches!(
            derive_answer(&spec, &trace),
            Err(AnswerError::Ambiguous(_))
        ));
    }

    #[test]
    fn zero_spin_rotation_task_is_a_mismatch() {
        let spec = scene(
            TaskType::RotationPerception,
            vec![object("obj0", ColorName::Red, Vec2::new(224.0, 224.0), Vec2::ZERO)],
            4.0,
        );
        let trace = simulate(&spec).unwrap();
        assert!(matches!(derive_answer(&spec, &trace), Err(AnswerError::Mismatch(_))));
    }

    #[test]
    fn motion_bursts_are_counted_from_onsets() {
        let mut obj = object("obj0", ColorName::Cyan, Vec2::new(120.0, 224.0), Vec2::new(60.0, 0.0));
        obj.active_spans = vec![
            TimeSpan { start_s: 0.5, end_s: 1.0 },
            TimeSpan { start_s: 1.6, end_s: 2.2 },
            TimeSpan { start_s: 2.9, end_s: 3.4 },
        ];
        let spec = scene(TaskType::MotionCounting, vec![obj], 4.0);
        let trace = simulate(&spec).unwrap();
        let truth = derive_answer(&spec, &trace).unwrap();
        assert_eq!(truth.value, AnswerValue::Count(3));
    }

    #[test]
    fn attribute_change_answer_is_new_value() {
        let mut obj = object("obj0", ColorName::Red, Vec2::new(224.0, 224.0), Vec2::new(40.0, 0.0));
        obj.attribute_schedule = vec![AttributeChange {
            time_s: 2.0,
            attribute: tempogen_core::AttributeKind::Color,
            new_value: AttributeValue::Color(ColorName::Blue),
        }];
        let spec = scene(TaskType::AttributeChange, vec![obj], 4.0);
        let trace = simulate(&spec).unwrap();
        let truth = derive_answer(&spec, &trace).unwrap();
        assert_eq!(truth.value, AnswerValue::AttributeOutcome("blue".into()));
    }
}
