//! Per-task scene generation with rejection sampling.
//!
//! Each task type has a builder that samples a candidate [`SceneSpec`]
//! aimed well inside the answer margins, then the driver simulates it,
//! runs task-specific visibility checks, and derives the ground truth.
//! Ambiguous or mismatched candidates are discarded and redrawn from the
//! same stream, so a (task, seed) pair always regenerates identically.

use super::derive::derive_answer;
use super::simulate::simulate;
use super::trace::SimulationTrace;
use rand::seq::SliceRandom;
use rand::Rng;
use tempogen_core::{
    new_rng, AnswerValue, AttributeChange, AttributeKind, AttributeValue, Canvas, ColorName,
    Difficulty, EventKind, GroundTruth, HeadingChange, ObjectSpec, Rng64, SceneSpec, Shape,
    TaskType, TimeSpan, Vec2,
};
use thiserror::Error;

/// Candidate redraws before generation gives up.
pub const RETRY_BOUND: u32 = 20;

/// Margin kept between glyph edges and walls for no-contact scenes, px.
const WALL_MARGIN: f64 = 6.0;

#[derive(Debug, Error)]
pub enum GenError {
    #[error(
        "gave up after {bound} attempts generating {task:?} from seed {seed}; last failure: {last_error}"
    )]
    RetriesExhausted { task: TaskType, seed: u64, bound: u32, last_error: String },
}

/// A generated scene with its trace and derived ground truth.
#[derive(Debug, Clone)]
pub struct ShortTermSample {
    pub spec: SceneSpec,
    pub trace: SimulationTrace,
    pub truth: GroundTruth,
    /// Candidates discarded before this one.
    pub retries: u32,
}

struct Candidate {
    spec: SceneSpec,
    /// Answer the builder aimed for; derivation must agree.
    expected: Option<AnswerValue>,
}

/// Generates one sample for `task` deterministically from `seed`.
pub fn generate_shortterm_sample(
    task: TaskType,
    seed: u64,
    difficulty: Difficulty,
    canvas: Canvas,
    fps: u32,
) -> Result<ShortTermSample, GenError> {
    let mut rng = new_rng(seed);
    let mut last_error = String::from("no candidate produced");
    for attempt in 0..RETRY_BOUND {
        let candidate = match build_candidate(task, seed, difficulty, canvas, fps, &mut rng) {
            Ok(c) => c,
            Err(msg) => {
                last_error = msg;
                continue;
            }
        };
        let trace = match simulate(&candidate.spec) {
            Ok(t) => t,
            Err(e) => {
                last_error = e.to_string();
                continue;
            }
        };
        if let Err(msg) = task_check(task, &candidate.spec, &trace) {
            last_error = msg;
            continue;
        }
        let truth = match derive_answer(&candidate.spec, &trace) {
            Ok(t) => t,
            Err(e) => {
                last_error = e.to_string();
                continue;
            }
        };
        if let Some(expected) = &candidate.expected {
            if truth.value != *expected {
                last_error = format!(
                    "derived answer {:?} disagrees with the template {:?}",
                    truth.value, expected
                );
                continue;
            }
        }
        return Ok(ShortTermSample { spec: candidate.spec, trace, truth, retries: attempt });
    }
    Err(GenError::RetriesExhausted { task, seed, bound: RETRY_BOUND, last_error })
}

fn build_candidate(
    task: TaskType,
    seed: u64,
    difficulty: Difficulty,
    canvas: Canvas,
    fps: u32,
    rng: &mut Rng64,
) -> Result<Candidate, String> {
    let duration = base_duration(difficulty, rng);
    let mut scene = |objects: Vec<ObjectSpec>, duration_s: f64| SceneSpec {
        seed,
        canvas,
        duration_s,
        fps,
        objects,
        task_type: task,
    };

    match task {
        TaskType::CollisionCounting => {
            let (color, shape) = one_style(rng);
            let size = rng.gen_range(14.0..22.0);
            // Slower in longer clips so contact counts stay in range.
            let speed = rng.gen_range(120.0..240.0) * (5.0 / duration).clamp(0.4, 1.0);
            let heading = rng.gen_range(0.0..360.0);
            let pos = central_point(rng, canvas);
            let obj = object("obj0", shape, color, size, pos, Vec2::from_heading_deg(heading) * speed);
            Ok(Candidate { spec: scene(vec![obj], duration), expected: None })
        }
        TaskType::DirectionIdentification => {
            let (color, shape) = one_style(rng);
            let size = rng.gen_range(12.0..20.0);
            let bucket = rng.gen_range(0..8) as f64;
            let heading = bucket * 45.0 + rng.gen_range(-12.5..12.5);
            let speed = rng.gen_range(60.0..140.0);
            let vel = Vec2::from_heading_deg(heading) * speed;
            let pos = linear_start(rng, canvas, size, vel, duration)
                .ok_or("direction path does not fit the canvas")?;
            let obj = object("obj0", shape, color, size, pos, vel);
            Ok(Candidate { spec: scene(vec![obj], duration), expected: None })
        }
        TaskType::TrajectoryRecognition => trajectory_candidate(rng, canvas, duration, &mut scene),
        TaskType::SpeedPerception => {
            let styles = distinct_styles(rng, 2);
            let ratio = rng.gen_range(1.6..2.4);
            let reference_speed = rng.gen_range(55.0..110.0);
            let subject_faster = rng.gen_bool(0.5);
            let subject_speed = if subject_faster {
                reference_speed * ratio
            } else {
                reference_speed / ratio
            };
            let positions = spread_points(rng, canvas, 2, 120.0)?;
            let objects = vec![
                moving_object("obj0", styles[0], rng.gen_range(12.0..18.0), positions[0], subject_speed, rng),
                moving_object("obj1", styles[1], rng.gen_range(12.0..18.0), positions[1], reference_speed, rng),
            ];
            let expected = if subject_faster {
                tempogen_core::SpeedComparison::Faster
            } else {
                tempogen_core::SpeedComparison::Slower
            };
            Ok(Candidate {
                spec: scene(objects, duration),
                expected: Some(AnswerValue::SpeedComparison(expected)),
            })
        }
        TaskType::MotionCounting => {
            let (color, shape) = one_style(rng);
            let size = rng.gen_range(12.0..18.0);
            let bursts = rng.gen_range(2..=6u32);
            let scale = if difficulty == Difficulty::Hard { 2.0 } else { 1.0 };
            let mut spans = Vec::new();
            let mut t = rng.gen_range(0.4..0.8) * scale;
            for _ in 0..bursts {
                let len = rng.gen_range(0.5..0.9) * scale;
                spans.push(TimeSpan { start_s: t, end_s: t + len });
                t += len + rng.gen_range(0.4..0.8) * scale;
            }
            let total = t + rng.gen_range(0.3..0.6) * scale;
            let active: f64 = spans.iter().map(|s| s.end_s - s.start_s).sum();
            let speed = rng.gen_range(70.0..130.0);
            let heading = rng.gen_range(0.0..360.0);
            let vel = Vec2::from_heading_deg(heading) * speed;
            let pos = linear_start(rng, canvas, size, vel, active)
                .ok_or("dashed path does not fit the canvas")?;
            let mut obj = object("obj0", shape, color, size, pos, vel);
            obj.active_spans = spans;
            Ok(Candidate {
                spec: scene(vec![obj], total),
                expected: Some(AnswerValue::Count(bursts)),
            })
        }
        TaskType::AttributeChange => attribute_candidate(rng, canvas, duration, &mut scene),
        TaskType::RotationPerception => {
            let color = *ColorName::ALL.choose(rng).unwrap();
            let shape = *[Shape::Square, Shape::Triangle, Shape::Star].choose(rng).unwrap();
            let size = rng.gen_range(18.0..28.0);
            let turns = rng.gen_range(1..=4u32);
            let frac = rng.gen_range(0.25..0.75);
            let omega = (turns as f64 + frac) * 360.0 / duration;
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let speed = rng.gen_range(40.0..80.0);
            let vel = Vec2::from_heading_deg(rng.gen_range(0.0..360.0)) * speed;
            let pos = linear_start(rng, canvas, size, vel, duration)
                .ok_or("drift path does not fit the canvas")?;
            let mut obj = object("obj0", shape, color, size, pos, vel);
            obj.angular_velocity = sign * omega;
            Ok(Candidate {
                spec: scene(vec![obj], duration),
                expected: Some(AnswerValue::Count(turns)),
            })
        }
        TaskType::RelativePosition => relative_candidate(rng, canvas, duration, &mut scene),
        TaskType::AccelerationDetection => {
            let (color, shape) = one_style(rng);
            let size = rng.gen_range(12.0..18.0);
            let pos = central_point(rng, canvas);
            let trend = rng.gen_range(0..3);
            let (v0, accel, expected) = match trend {
                0 => {
                    let v0 = rng.gen_range(45.0..75.0);
                    let ratio = rng.gen_range(1.65..2.1);
                    (v0, v0 * (ratio - 1.0) / duration, tempogen_core::SpeedTrend::SpeedingUp)
                }
                1 => {
                    let v0 = rng.gen_range(100.0..160.0);
                    let ratio = rng.gen_range(1.65..2.1);
                    (v0, -v0 * (1.0 - 1.0 / ratio) / duration, tempogen_core::SpeedTrend::SlowingDown)
                }
                _ => (rng.gen_range(60.0..120.0), 0.0, tempogen_core::SpeedTrend::ConstantSpeed),
            };
            let mut obj =
                object("obj0", shape, color, size, pos, Vec2::from_heading_deg(rng.gen_range(0.0..360.0)) * v0);
            obj.tangential_accel = accel;
            Ok(Candidate {
                spec: scene(vec![obj], duration),
                expected: Some(AnswerValue::SpeedTrend(expected)),
            })
        }
        TaskType::VelocityComparison => {
            let styles = distinct_styles(rng, 3);
            let base = rng.gen_range(40.0..65.0);
            let speeds = [
                base,
                base * rng.gen_range(1.4..1.7),
                base * rng.gen_range(1.4..1.7) * rng.gen_range(1.4..1.7),
            ];
            let mut order = [0usize, 1, 2];
            order.shuffle(rng);
            let positions = spread_points(rng, canvas, 3, 110.0)?;
            let mut objects = Vec::new();
            let mut fastest_label = String::new();
            for (slot, &speed_idx) in order.iter().enumerate() {
                let obj = moving_object(
                    &format!("obj{slot}"),
                    styles[slot],
                    rng.gen_range(12.0..18.0),
                    positions[slot],
                    speeds[speed_idx],
                    rng,
                );
                if speed_idx == 2 {
                    fastest_label = obj.label();
                }
                objects.push(obj);
            }
            Ok(Candidate {
                spec: scene(objects, duration),
                expected: Some(AnswerValue::ObjectLabel(fastest_label)),
            })
        }
        TaskType::DistanceEstimation => distance_candidate(rng, canvas, duration, &mut scene),
        TaskType::SequentialOrdering => ordering_candidate(rng, canvas, duration, &mut scene),
    }
}

/// Visibility and pacing requirements that are about watchability rather
/// than answer margins.
fn task_check(task: TaskType, _spec: &SceneSpec, trace: &SimulationTrace) -> Result<(), String> {
    match task {
        TaskType::CollisionCounting => {
            let frames: Vec<u32> = trace
                .events
                .iter()
                .filter(|e| e.kind == EventKind::WallContact)
                .map(|e| e.frame_index)
                .collect();
            let count = frames.len();
            if !(1..=8).contains(&count) {
                return Err(format!("{count} wall contacts outside the 1..=8 band"));
            }
            let fps = trace.fps as f64;
            let end = (trace.frame_count - 1) as f64;
            if frames.windows(2).any(|w| w[1] - w[0] < 6) {
                return Err("wall contacts too close together to count".into());
            }
            if frames.windows(2).any(|w| w[1] == w[0]) {
                return Err("corner hit produced two contacts in one frame".into());
            }
            let margin = 0.3 * fps;
            if frames.iter().any(|&f| (f as f64) < margin || (f as f64) > end - margin) {
                return Err("wall contact too close to a clip boundary".into());
            }
            Ok(())
        }
        TaskType::TrajectoryRecognition
        | TaskType::DirectionIdentification
        | TaskType::AttributeChange
        | TaskType::SequentialOrdering => {
            if trace.events.iter().any(|e| e.kind == EventKind::WallContact) {
                return Err("unexpected wall contact for a no-bounce task".into());
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn trajectory_candidate(
    rng: &mut Rng64,
    canvas: Canvas,
    duration: f64,
    scene: &mut impl FnMut(Vec<ObjectSpec>, f64) -> SceneSpec,
) -> Result<Candidate, String> {
    let (color, shape) = one_style(rng);
    let size = rng.gen_range(10.0..16.0);
    let template = rng.gen_range(0..3);
    let (obj, expected) = match template {
        0 => {
            let heading = rng.gen_range(0.0..360.0);
            let speed = rng.gen_range(70.0..150.0);
            let vel = Vec2::from_heading_deg(heading) * speed;
            let pos = linear_start(rng, canvas, size, vel, duration)
                .ok_or("linear path does not fit the canvas")?;
            (object("obj0", shape, color, size, pos, vel), tempogen_core::TrajectoryClass::Linear)
        }
        1 => {
            let radius = rng.gen_range(60.0..140.0);
            let clearance = radius + size + WALL_MARGIN;
            let w = canvas.width as f64;
            let h = canvas.height as f64;
            if 2.0 * clearance >= w.min(h) {
                return Err("circle does not fit the canvas".into());
            }
            let center = Vec2::new(
                rng.gen_range(clearance..w - clearance),
                rng.gen_range(clearance..h - clearance),
            );
            let arc = rng.gen_range(300.0..540.0);
            let turn_rate = arc / duration * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let speed = turn_rate.abs().to_radians() * radius;
            if !(30.0..=380.0).contains(&speed) {
                return Err(format!("circular speed {speed:.0} out of range"));
            }
            let phase: f64 = rng.gen_range(0.0..360.0);
            let (sin, cos) = phase.to_radians().sin_cos();
            let pos = center + Vec2::new(radius * cos, -radius * sin);
            let tangent = if turn_rate > 0.0 {
                Vec2::new(-sin, -cos)
            } else {
                Vec2::new(sin, cos)
            };
            let mut obj = object("obj0", shape, color, size, pos, tangent * speed);
            obj.turn_rate = turn_rate;
            (obj, tempogen_core::TrajectoryClass::Circular)
        }
        _ => {
            let legs = rng.gen_range(4..=7u32);
            let leg_time = duration / legs as f64;
            let speed = rng.gen_range(90.0..160.0);
            let heading = rng.gen_range(0.0..360.0);
            let vel = Vec2::from_heading_deg(heading) * speed;
            let mut changes = Vec::new();
            let mut sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            for leg in 1..legs {
                changes.push(HeadingChange {
                    time_s: leg as f64 * leg_time,
                    turn_deg: sign * rng.gen_range(80.0..150.0),
                });
                sign = -sign;
            }
            let pos = central_point(rng, canvas);
            let mut obj = object("obj0", shape, color, size, pos, vel);
            obj.heading_changes = changes;
            (obj, tempogen_core::TrajectoryClass::Zigzag)
        }
    };
    Ok(Candidate {
        spec: scene(vec![obj], duration),
        expected: Some(AnswerValue::Trajectory(expected)),
    })
}

fn attribute_candidate(
    rng: &mut Rng64,
    canvas: Canvas,
    duration: f64,
    scene: &mut impl FnMut(Vec<ObjectSpec>, f64) -> SceneSpec,
) -> Result<Candidate, String> {
    let (color, shape) = one_style(rng);
    let size: f64 = rng.gen_range(14.0..20.0);
    let speed = rng.gen_range(30.0..70.0);
    let vel = Vec2::from_heading_deg(rng.gen_range(0.0..360.0)) * speed;
    let max_size = size.max(size * 1.7);
    let pos = linear_start(rng, canvas, max_size, vel, duration)
        .ok_or("drift path does not fit the canvas")?;
    let time_s = duration * rng.gen_range(0.35..0.65);
    let roll = rng.gen_range(0..4);
    let (change, expected) = match roll {
        0 | 1 => {
            let new_color = *ColorName::ALL
                .iter()
                .filter(|c| **c != color)
                .collect::<Vec<_>>()
                .choose(rng)
                .unwrap();
            (
                AttributeChange {
                    time_s,
                    attribute: AttributeKind::Color,
                    new_value: AttributeValue::Color(*new_color),
                },
                new_color.name().to_string(),
            )
        }
        2 => {
            let grow = rng.gen_bool(0.5);
            let new_size = if grow { size * 1.7 } else { size * 0.6 };
            (
                AttributeChange {
                    time_s,
                    attribute: AttributeKind::Size,
                    new_value: AttributeValue::Size(new_size),
                },
                if grow { "larger".to_string() } else { "smaller".to_string() },
            )
        }
        _ => {
            let new_shape = *Shape::ALL
                .iter()
                .filter(|s| **s != shape)
                .collect::<Vec<_>>()
                .choose(rng)
                .unwrap();
            (
                AttributeChange {
                    time_s,
                    attribute: AttributeKind::Shape,
                    new_value: AttributeValue::Shape(*new_shape),
                },
                new_shape.name().to_string(),
            )
        }
    };
    let mut obj = object("obj0", shape, color, size, pos, vel);
    obj.attribute_schedule = vec![change];
    Ok(Candidate {
        spec: scene(vec![obj], duration),
        expected: Some(AnswerValue::AttributeOutcome(expected)),
    })
}

fn relative_candidate(
    rng: &mut Rng64,
    canvas: Canvas,
    duration: f64,
    scene: &mut impl FnMut(Vec<ObjectSpec>, f64) -> SceneSpec,
) -> Result<Candidate, String> {
    use tempogen_core::RelativeDir;
    let styles = distinct_styles(rng, 2);
    let sizes = [rng.gen_range(12.0..18.0), rng.gen_range(12.0..18.0)];
    let target = *RelativeDir::ALL.choose(rng).unwrap();
    let major = rng.gen_range(90.0..180.0);
    let minor = rng.gen_range(0.0..major / 3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let offset = match target {
        RelativeDir::LeftOf => Vec2::new(-major, minor),
        RelativeDir::RightOf => Vec2::new(major, minor),
        RelativeDir::Above => Vec2::new(minor, -major),
        RelativeDir::Below => Vec2::new(minor, major),
    };
    let w = canvas.width as f64;
    let h = canvas.height as f64;
    let end_b = Vec2::new(rng.gen_range(0.3 * w..0.7 * w), rng.gen_range(0.3 * h..0.7 * h));
    let end_a = end_b + offset;
    let mut objects = Vec::new();
    for (idx, end) in [end_a, end_b].into_iter().enumerate() {
        let speed = rng.gen_range(30.0..80.0);
        let vel = Vec2::from_heading_deg(rng.gen_range(0.0..360.0)) * speed;
        let start = end - vel * duration;
        for p in [start, end] {
            let lo = sizes[idx] + WALL_MARGIN;
            if p.x < lo || p.x > w - lo || p.y < lo || p.y > h - lo {
                return Err("relative-position path leaves the canvas".into());
            }
        }
        objects.push(object(&format!("obj{idx}"), styles[idx].1, styles[idx].0, sizes[idx], start, vel));
    }
    if objects[0].position.distance(objects[1].position) < 60.0 {
        return Err("objects start too close together".into());
    }
    Ok(Candidate {
        spec: scene(objects, duration),
        expected: Some(AnswerValue::RelativeDir(target)),
    })
}

fn distance_candidate(
    rng: &mut Rng64,
    canvas: Canvas,
    duration: f64,
    scene: &mut impl FnMut(Vec<ObjectSpec>, f64) -> SceneSpec,
) -> Result<Candidate, String> {
    use tempogen_core::DistanceChange;
    let styles = distinct_styles(rng, 2);
    let sizes = [rng.gen_range(12.0..16.0), rng.gen_range(12.0..16.0)];
    let outcome = *DistanceChange::ALL.choose(rng).unwrap();
    let w = canvas.width as f64;
    let h = canvas.height as f64;
    let in_bounds = |p: Vec2, size: f64| {
        let lo = size + WALL_MARGIN;
        p.x >= lo && p.x <= w - lo && p.y >= lo && p.y <= h - lo
    };

    let (starts, ends) = match outcome {
        DistanceChange::Unchanged => {
            // Identical velocities keep the separation exact.
            let d0 = rng.gen_range(130.0..230.0);
            let sep_dir = Vec2::from_heading_deg(rng.gen_range(0.0..360.0));
            let speed = rng.gen_range(50.0..110.0);
            let vel = Vec2::from_heading_deg(rng.gen_range(0.0..360.0)) * speed;
            let start_a = central_point(rng, canvas);
            let start_b = start_a + sep_dir * d0;
            let ends = [start_a + vel * duration, start_b + vel * duration];
            ([start_a, start_b], ends)
        }
        DistanceChange::Closer | DistanceChange::Farther => {
            let near = rng.gen_range(52.0..80.0);
            let far = near * rng.gen_range(1.5..2.0);
            let (d_start, d_end) = if outcome == DistanceChange::Closer {
                (far, near)
            } else {
                (near, far)
            };
            let dir_s = Vec2::from_heading_deg(rng.gen_range(0.0..360.0));
            let dir_e = Vec2::from_heading_deg(rng.gen_range(0.0..360.0));
            let start_a = central_point(rng, canvas);
            let end_a = central_point(rng, canvas);
            (
                [start_a, start_a + dir_s * d_start],
                [end_a, end_a + dir_e * d_end],
            )
        }
    };

    let mut objects = Vec::new();
    for idx in 0..2 {
        if !in_bounds(starts[idx], sizes[idx]) || !in_bounds(ends[idx], sizes[idx]) {
            return Err("distance endpoints leave the canvas".into());
        }
        let vel = (ends[idx] - starts[idx]) * (1.0 / duration);
        let speed = vel.length();
        if !(12.0..=220.0).contains(&speed) {
            return Err(format!("distance-task speed {speed:.0} out of range"));
        }
        objects.push(object(
            &format!("obj{idx}"),
            styles[idx].1,
            styles[idx].0,
            sizes[idx],
            starts[idx],
            vel,
        ));
    }
    Ok(Candidate {
        spec: scene(objects, duration),
        expected: Some(AnswerValue::DistanceChange(outcome)),
    })
}

fn ordering_candidate(
    rng: &mut Rng64,
    canvas: Canvas,
    duration: f64,
    scene: &mut impl FnMut(Vec<ObjectSpec>, f64) -> SceneSpec,
) -> Result<Candidate, String> {
    let styles = distinct_styles(rng, 3);
    let taken: Vec<ColorName> = styles.iter().map(|s| s.0).collect();
    let mut fresh: Vec<ColorName> = ColorName::ALL
        .iter()
        .copied()
        .filter(|c| !taken.contains(c))
        .collect();
    fresh.shuffle(rng);

    let mut times = Vec::new();
    for _ in 0..12 {
        let mut t: Vec<f64> = (0..3)
            .map(|_| rng.gen_range(0.8..duration - 0.8))
            .collect();
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if t.windows(2).all(|w| w[1] - w[0] >= 0.6) {
            times = t;
            break;
        }
    }
    if times.is_empty() {
        return Err("could not space the change events".into());
    }

    let mut order: Vec<usize> = vec![0, 1, 2];
    order.shuffle(rng);
    let positions = spread_points(rng, canvas, 3, 110.0)?;
    let mut objects = Vec::new();
    let mut labels_by_time: Vec<(f64, String)> = Vec::new();
    for idx in 0..3 {
        let speed = rng.gen_range(20.0..50.0);
        let vel = Vec2::from_heading_deg(rng.gen_range(0.0..360.0)) * speed;
        let size = rng.gen_range(12.0..18.0);
        let start = positions[idx] - vel * (duration / 2.0);
        let lo = size + WALL_MARGIN;
        let w = canvas.width as f64;
        let h = canvas.height as f64;
        let end = start + vel * duration;
        for p in [start, end] {
            if p.x < lo || p.x > w - lo || p.y < lo || p.y > h - lo {
                return Err("ordering drift path leaves the canvas".into());
            }
        }
        let time_s = times[order[idx]];
        let mut obj = object(&format!("obj{idx}"), styles[idx].1, styles[idx].0, size, start, vel);
        obj.attribute_schedule = vec![AttributeChange {
            time_s,
            attribute: AttributeKind::Color,
            new_value: AttributeValue::Color(fresh[idx]),
        }];
        labels_by_time.push((time_s, obj.label()));
        objects.push(obj);
    }
    labels_by_time.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let expected: Vec<String> = labels_by_time.into_iter().map(|(_, l)| l).collect();
    Ok(Candidate {
        spec: scene(objects, duration),
        expected: Some(AnswerValue::EventOrder(expected)),
    })
}

// --- shared sampling helpers ---

fn base_duration(difficulty: Difficulty, rng: &mut Rng64) -> f64 {
    let base = rng.gen_range(4.0..6.0);
    match difficulty {
        Difficulty::Standard => base,
        Difficulty::Hard => base * 2.0,
    }
}

fn object(id: &str, shape: Shape, color: ColorName, size: f64, position: Vec2, velocity: Vec2) -> ObjectSpec {
    ObjectSpec {
        id: id.into(),
        shape,
        color,
        size,
        position,
        velocity,
        angular_velocity: 0.0,
        tangential_accel: 0.0,
        turn_rate: 0.0,
        heading_changes: vec![],
        active_spans: vec![],
        attribute_schedule: vec![],
    }
}

fn moving_object(
    id: &str,
    style: (ColorName, Shape),
    size: f64,
    position: Vec2,
    speed: f64,
    rng: &mut Rng64,
) -> ObjectSpec {
    let vel = Vec2::from_heading_deg(rng.gen_range(0.0..360.0)) * speed;
    object(id, style.1, style.0, size, position, vel)
}

fn one_style(rng: &mut Rng64) -> (ColorName, Shape) {
    (*ColorName::ALL.choose(rng).unwrap(), *Shape::ALL.choose(rng).unwrap())
}

/// Distinct (color, shape) pairs, which makes labels pairwise distinct.
fn distinct_styles(rng: &mut Rng64, n: usize) -> Vec<(ColorName, Shape)> {
    let mut combos: Vec<(ColorName, Shape)> = ColorName::ALL
        .iter()
        .flat_map(|c| Shape::ALL.iter().map(move |s| (*c, *s)))
        .collect();
    combos.shuffle(rng);
    combos.truncate(n);
    combos
}

fn central_point(rng: &mut Rng64, canvas: Canvas) -> Vec2 {
    let w = canvas.width as f64;
    let h = canvas.height as f64;
    Vec2::new(rng.gen_range(0.3 * w..0.7 * w), rng.gen_range(0.3 * h..0.7 * h))
}

/// Start position from which `duration` seconds of straight motion at
/// `vel` stays fully inside the canvas.
fn linear_start(rng: &mut Rng64, canvas: Canvas, size: f64, vel: Vec2, duration: f64) -> Option<Vec2> {
    let axis = |dim: f64, v: f64| {
        let lo = size + WALL_MARGIN;
        let hi = dim - size - WALL_MARGIN;
        let travel = v * duration;
        let min = lo + (-travel).max(0.0);
        let max = hi - travel.max(0.0);
        if min < max {
            Some((min, max))
        } else {
            None
        }
    };
    let (min_x, max_x) = axis(canvas.width as f64, vel.x)?;
    let (min_y, max_y) = axis(canvas.height as f64, vel.y)?;
    Some(Vec2::new(rng.gen_range(min_x..max_x), rng.gen_range(min_y..max_y)))
}

/// `n` positions in the central area, pairwise at least `min_gap` apart.
fn spread_points(rng: &mut Rng64, canvas: Canvas, n: usize, min_gap: f64) -> Result<Vec<Vec2>, String> {
    let mut points: Vec<Vec2> = Vec::new();
    for _ in 0..60 {
        let p = central_point(rng, canvas);
        if points.iter().all(|q| q.distance(p) >= min_gap) {
            points.push(p);
            if points.len() == n {
                return Ok(points);
            }
        }
    }
    Err("could not spread objects apart".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_task_generates_from_early_seeds() {
        for task in TaskType::ALL {
            let mut produced = 0;
            for seed in 0..8 {
                if generate_shortterm_sample(task, seed, Difficulty::Standard, Canvas::default(), 30)
                    .is_ok()
                {
                    produced += 1;
                }
            }
            assert!(produced >= 7, "{task:?} produced only {produced}/8 samples");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for task in [TaskType::CollisionCounting, TaskType::TrajectoryRecognition] {
            let a = generate_shortterm_sample(task, 11, Difficulty::Standard, Canvas::default(), 30)
                .unwrap();
            let b = generate_shortterm_sample(task, 11, Difficulty::Standard, Canvas::default(), 30)
                .unwrap();
            assert_eq!(
                serde_json::to_vec(&a.trace).unwrap(),
                serde_json::to_vec(&b.trace).unwrap()
            );
            assert_eq!(a.truth, b.truth);
        }
    }

    #[test]
    fn hard_profile_doubles_duration() {
        let std =
            generate_shortterm_sample(TaskType::DirectionIdentification, 3, Difficulty::Standard, Canvas::default(), 30)
                .unwrap();
        let hard =
            generate_shortterm_sample(TaskType::DirectionIdentification, 3, Difficulty::Hard, Canvas::default(), 30)
                .unwrap();
        assert!((4.0..6.0).contains(&std.spec.duration_s));
        assert!((8.0..12.0).contains(&hard.spec.duration_s));
    }

    #[test]
    fn labels_within_a_scene_are_distinct() {
        let sample =
            generate_shortterm_sample(TaskType::VelocityComparison, 5, Difficulty::Standard, Canvas::default(), 30)
                .unwrap();
        let labels: std::collections::BTreeSet<String> =
            sample.spec.objects.iter().map(|o| o.label()).collect();
        assert_eq!(labels.len(), sample.spec.objects.len());
    }
}
