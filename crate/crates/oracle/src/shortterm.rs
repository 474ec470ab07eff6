//! Brute-force re-derivation of short-term answers from the spec alone.
//!
//! Uses closed forms and the spec's own structure wherever possible
//! (constant velocities, scheduled times), and a plain scalar loop where
//! the dynamics matter (wall contacts). This is a different route to the
//! answer than the engine's trace/event-log derivation, so agreement is a
//! real check rather than the same code run twice.

use tempogen_core::{
    AnswerValue, AttributeValue, Compass8, DistanceChange, RelativeDir, SceneSpec, SpeedComparison,
    SpeedTrend, TaskType, TrajectoryClass,
};

/// Recomputes the canonical answer text for `spec`, or None when the spec
/// does not look like a well-formed instance of its task.
pub fn oracle_shortterm_answer(spec: &SceneSpec) -> Option<String> {
    let value = match spec.task_type {
        TaskType::CollisionCounting => AnswerValue::Count(count_wall_contacts(spec)?),
        TaskType::DirectionIdentification => {
            let v = spec.objects.first()?.velocity;
            if v.length() < 1e-9 {
                return None;
            }
            AnswerValue::Direction(Compass8::from_heading_deg(v.heading_deg()))
        }
        TaskType::TrajectoryRecognition => {
            let obj = spec.objects.first()?;
            let big_turns = obj
                .heading_changes
                .iter()
                .filter(|h| h.turn_deg.abs() > 60.0)
                .count();
            let class = if obj.turn_rate != 0.0 {
                TrajectoryClass::Circular
            } else if big_turns >= 3 {
                TrajectoryClass::Zigzag
            } else if obj.heading_changes.is_empty() {
                TrajectoryClass::Linear
            } else {
                return None;
            };
            AnswerValue::Trajectory(class)
        }
        TaskType::SpeedPerception => {
            let [a, b] = spec.objects.as_slice() else { return None };
            let (sa, sb) = (a.velocity.length(), b.velocity.length());
            if sa > sb {
                AnswerValue::SpeedComparison(SpeedComparison::Faster)
            } else if sb > sa {
                AnswerValue::SpeedComparison(SpeedComparison::Slower)
            } else {
                return None;
            }
        }
        TaskType::MotionCounting => {
            let obj = spec.objects.first()?;
            if obj.active_spans.is_empty() || obj.active_spans[0].start_s <= 0.0 {
                return None;
            }
            AnswerValue::Count(obj.active_spans.len() as u32)
        }
        TaskType::AttributeChange => {
            let obj = spec.objects.first()?;
            let [change] = obj.attribute_schedule.as_slice() else { return None };
            let outcome = match change.new_value {
                AttributeValue::Color(c) => c.name().to_string(),
                AttributeValue::Shape(s) => s.name().to_string(),
                AttributeValue::Size(new) => {
                    if new > obj.size {
                        "larger".to_string()
                    } else {
                        "smaller".to_string()
                    }
                }
            };
            AnswerValue::AttributeOutcome(outcome)
        }
        TaskType::RotationPerception => {
            let obj = spec.objects.first()?;
            if obj.angular_velocity == 0.0 {
                return None;
            }
            let total = obj.angular_velocity.abs() * clip_span(spec);
            AnswerValue::Count((total / 360.0).floor() as u32)
        }
        TaskType::RelativePosition => {
            let [a, b] = spec.objects.as_slice() else { return None };
            let span = clip_span(spec);
            let pa = a.position + a.velocity * span;
            let pb = b.position + b.velocity * span;
            let (dx, dy) = (pa.x - pb.x, pa.y - pb.y);
            let dir = if dx.abs() >= 2.0 * dy.abs() && dx.abs() >= 40.0 {
                if dx < 0.0 { RelativeDir::LeftOf } else { RelativeDir::RightOf }
            } else if dy.abs() >= 2.0 * dx.abs() && dy.abs() >= 40.0 {
                if dy < 0.0 { RelativeDir::Above } else { RelativeDir::Below }
            } else {
                return None;
            };
            AnswerValue::RelativeDir(dir)
        }
        TaskType::AccelerationDetection => {
            let obj = spec.objects.first()?;
            let v0 = obj.velocity.length();
            if v0 < 1e-9 {
                return None;
            }
            let v_end = v0 + obj.tangential_accel * clip_span(spec);
            let trend = if obj.tangential_accel > 0.0 && v_end / v0 >= 1.5 {
                SpeedTrend::SpeedingUp
            } else if obj.tangential_accel < 0.0 && v0 / v_end >= 1.5 {
                SpeedTrend::SlowingDown
            } else if obj.tangential_accel == 0.0 {
                SpeedTrend::ConstantSpeed
            } else {
                return None;
            };
            AnswerValue::SpeedTrend(trend)
        }
        TaskType::VelocityComparison => {
            let mut speeds: Vec<(f64, String)> = spec
                .objects
                .iter()
                .map(|o| (o.velocity.length(), o.label()))
                .collect();
            if speeds.len() < 3 {
                return None;
            }
            speeds.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            if speeds[0].0 <= speeds[1].0 {
                return None;
            }
            AnswerValue::ObjectLabel(speeds[0].1.clone())
        }
        TaskType::DistanceEstimation => {
            let [a, b] = spec.objects.as_slice() else { return None };
            let span = clip_span(spec);
            let d0 = a.position.distance(b.position);
            let d1 = (a.position + a.velocity * span).distance(b.position + b.velocity * span);
            if d0 < 1e-9 {
                return None;
            }
            let ratio = d1 / d0;
            let change = if ratio <= 1.0 / 1.3 {
                DistanceChange::Closer
            } else if ratio >= 1.3 {
                DistanceChange::Farther
            } else if (0.999..=1.001).contains(&ratio) {
                DistanceChange::Unchanged
            } else {
                return None;
            };
            AnswerValue::DistanceChange(change)
        }
        TaskType::SequentialOrdering => {
            let mut timed: Vec<(f64, String)> = Vec::new();
            for obj in &spec.objects {
                let [change] = obj.attribute_schedule.as_slice() else { return None };
                timed.push((change.time_s, obj.label()));
            }
            if timed.len() < 3 {
                return None;
            }
            timed.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            AnswerValue::EventOrder(timed.into_iter().map(|(_, l)| l).collect())
        }
    };
    Some(value.canonical_text())
}

/// Seconds between the first and last frame.
fn clip_span(spec: &SceneSpec) -> f64 {
    let frames = (spec.duration_s * spec.fps as f64).ceil() as u32;
    (frames - 1) as f64 / spec.fps as f64
}

/// Scalar re-integration counting mirror reflections.
fn count_wall_contacts(spec: &SceneSpec) -> Option<u32> {
    let obj = spec.objects.first()?;
    if obj.turn_rate != 0.0 || obj.tangential_accel != 0.0 || !obj.active_spans.is_empty() {
        return None;
    }
    let dt = 1.0 / spec.fps as f64;
    let frames = (spec.duration_s * spec.fps as f64).ceil() as u32;
    let (lo_x, hi_x) = (obj.size, spec.canvas.width as f64 - obj.size);
    let (lo_y, hi_y) = (obj.size, spec.canvas.height as f64 - obj.size);
    let (mut x, mut y) = (obj.position.x, obj.position.y);
    let (mut vx, mut vy) = (obj.velocity.x, obj.velocity.y);
    let mut contacts = 0u32;
    for _ in 1..frames {
        x += vx * dt;
        y += vy * dt;
        loop {
            if x < lo_x {
                x = 2.0 * lo_x - x;
                vx = -vx;
            } else if x > hi_x {
                x = 2.0 * hi_x - x;
                vx = -vx;
            } else if y < lo_y {
                y = 2.0 * lo_y - y;
                vy = -vy;
            } else if y > hi_y {
                y = 2.0 * hi_y - y;
                vy = -vy;
            } else {
                break;
            }
            contacts += 1;
        }
    }
    Some(contacts)
}
