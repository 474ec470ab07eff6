//! The kinematic simulator.
//!
//! Explicit Euler at Δt = 1/fps: each frame advances every object by its
//! effective velocity, reflects it elastically off canvas walls (position
//! mirrored about the wall, normal velocity component negated), and logs
//! every discrete event at the frame where it takes effect. For objects
//! with a continuous turn rate the step direction uses the half-angle
//! heading so turning paths stay on their circle; with `turn_rate == 0`
//! this reduces to plain Euler.

use super::trace::{GlyphStyle, ObjectTrace, SimulationTrace};
use std::collections::BTreeMap;
use tempogen_core::{
    sort_events, AttributeValue, EventPayload, EventRecord, SceneSpec, SpecError, Vec2, WallSide,
};
use thiserror::Error;

/// Speed floor, px/s. Deceleration never reverses motion.
const MIN_SPEED: f64 = 1.0;
/// Reflection passes per frame before the spec is declared degenerate.
const MAX_REFLECTIONS_PER_FRAME: usize = 16;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scene spec: {0}")]
    Spec(#[from] SpecError),
    #[error("object {id:?} size {size} exceeds half the canvas; no valid motion")]
    ObjectTooLarge { id: String, size: f64 },
    #[error("object {0:?} does not fit inside the canvas at its start position")]
    StartsOverlappingWall(String),
    #[error("object {0:?} crossed more walls per frame than physically plausible")]
    UnstableReflection(String),
}

struct ObjectState {
    pos: Vec2,
    /// Base velocity: full magnitude and current heading, even while gated off.
    vel: Vec2,
    angle: f64,
    cum_rot: f64,
    style: GlyphStyle,
    active: bool,
}

/// Runs the simulation for `spec`.
///
/// The trace has exactly `ceil(duration_s * fps)` frames; frame `i` is the
/// state at time `i / fps`.
pub fn simulate(spec: &SceneSpec) -> Result<SimulationTrace, SimError> {
    spec.validate()?;
    let (w, h) = (spec.canvas.width as f64, spec.canvas.height as f64);
    for obj in &spec.objects {
        if obj.size * 2.0 > spec.canvas.min_side() as f64 {
            return Err(SimError::ObjectTooLarge { id: obj.id.clone(), size: obj.size });
        }
        let p = obj.position;
        if p.x < obj.size || p.x > w - obj.size || p.y < obj.size || p.y > h - obj.size {
            return Err(SimError::StartsOverlappingWall(obj.id.clone()));
        }
    }

    let frames = spec.frame_count();
    let fps = spec.fps;
    let dt = 1.0 / fps as f64;

    // Schedules resolved to frame indices (nearest frame).
    let to_frame = |t: f64| (t * fps as f64).round() as u32;

    let mut states: Vec<ObjectState> = Vec::with_capacity(spec.objects.len());
    let mut traces: Vec<ObjectTrace> = Vec::with_capacity(spec.objects.len());
    let mut heading_sched: Vec<BTreeMap<u32, Vec<f64>>> = Vec::new();
    let mut attr_sched: Vec<BTreeMap<u32, Vec<AttributeValue>>> = Vec::new();
    let mut events: Vec<EventRecord> = Vec::new();

    for obj in &spec.objects {
        let mut hs: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
        for hc in &obj.heading_changes {
            hs.entry(to_frame(hc.time_s)).or_default().push(hc.turn_deg);
        }
        heading_sched.push(hs);
        let mut asched: BTreeMap<u32, Vec<AttributeValue>> = BTreeMap::new();
        for ac in &obj.attribute_schedule {
            asched.entry(to_frame(ac.time_s)).or_default().push(ac.new_value);
        }
        attr_sched.push(asched);

        states.push(ObjectState {
            pos: obj.position,
            vel: obj.velocity,
            angle: 0.0,
            cum_rot: 0.0,
            style: GlyphStyle { shape: obj.shape, color: obj.color, size: obj.size },
            active: obj.active_at(0.0),
        });
        traces.push(ObjectTrace {
            id: obj.id.clone(),
            label: obj.label(),
            positions: Vec::with_capacity(frames),
            velocities: Vec::with_capacity(frames),
            angles: Vec::with_capacity(frames),
            cumulative_rotation: Vec::with_capacity(frames),
            styles: Vec::with_capacity(frames),
        });
    }

    // Frame-0 attribute changes take effect before anything is recorded.
    for (idx, obj) in spec.objects.iter().enumerate() {
        if let Some(values) = attr_sched[idx].get(&0) {
            for value in values {
                apply_attribute(&mut states[idx].style, *value, 0, fps, &obj.id, &mut events);
            }
        }
    }
    record_frame(&states, &mut traces);

    for frame in 1..frames as u32 {
        let t = frame as f64 * dt;
        for (idx, obj) in spec.objects.iter().enumerate() {
            let state = &mut states[idx];

            // Advance position with the velocity held at the previous frame.
            if state.active {
                let step_vel = if obj.turn_rate != 0.0 {
                    state.vel.rotated_deg(obj.turn_rate * dt * 0.5)
                } else {
                    state.vel
                };
                state.pos += step_vel * dt;
                reflect(state, obj.size, w, h, frame, fps, &obj.id, &mut events)?;
            }

            // Velocity updates that take effect at this frame.
            if obj.turn_rate != 0.0 {
                state.vel = state.vel.rotated_deg(obj.turn_rate * dt);
            }
            if obj.tangential_accel != 0.0 {
                let speed = state.vel.length();
                if speed > 0.0 {
                    let new_speed = (speed + obj.tangential_accel * dt).max(MIN_SPEED);
                    state.vel = state.vel * (new_speed / speed);
                }
            }
            if let Some(turns) = heading_sched[idx].get(&frame) {
                for turn in turns {
                    let from = state.vel;
                    state.vel = state.vel.rotated_deg(*turn);
                    events.push(EventRecord::new(
                        frame,
                        fps,
                        &obj.id,
                        EventPayload::DirectionChange { from, to: state.vel },
                    ));
                }
            }

            // Motion gating edges.
            let active_now = obj.active_at(t);
            if active_now != state.active {
                let (from, to) = if active_now {
                    (Vec2::ZERO, state.vel)
                } else {
                    (state.vel, Vec2::ZERO)
                };
                events.push(EventRecord::new(
                    frame,
                    fps,
                    &obj.id,
                    EventPayload::DirectionChange { from, to },
                ));
                state.active = active_now;
            }

            // Spin and cumulative angular displacement.
            if obj.angular_velocity != 0.0 {
                let prev_full = (state.cum_rot.abs() / 360.0).floor() as u32;
                state.angle += obj.angular_velocity * dt;
                state.cum_rot += obj.angular_velocity * dt;
                let full = (state.cum_rot.abs() / 360.0).floor() as u32;
                if full > prev_full {
                    events.push(EventRecord::new(
                        frame,
                        fps,
                        &obj.id,
                        EventPayload::RotationComplete { completed: full },
                    ));
                }
            }

            // Scheduled attribute changes.
            if let Some(values) = attr_sched[idx].get(&frame) {
                for value in values.clone() {
                    apply_attribute(&mut states[idx].style, value, frame, fps, &obj.id, &mut events);
                }
            }
        }
        record_frame(&states, &mut traces);
    }

    sort_events(&mut events);
    Ok(SimulationTrace {
        canvas: spec.canvas,
        fps,
        frame_count: frames,
        objects: traces,
        events,
    })
}

fn record_frame(states: &[ObjectState], traces: &mut [ObjectTrace]) {
    for (state, trace) in states.iter().zip(traces.iter_mut()) {
        trace.positions.push(state.pos);
        trace
            .velocities
            .push(if state.active { state.vel } else { Vec2::ZERO });
        trace.angles.push(state.angle);
        trace.cumulative_rotation.push(state.cum_rot);
        trace.styles.push(state.style);
    }
}

fn reflect(
    state: &mut ObjectState,
    size: f64,
    w: f64,
    h: f64,
    frame: u32,
    fps: u32,
    id: &str,
    events: &mut Vec<EventRecord>,
) -> Result<(), SimError> {
    let (lo_x, hi_x) = (size, w - size);
    let (lo_y, hi_y) = (size, h - size);
    for _ in 0..MAX_REFLECTIONS_PER_FRAME {
        let side = if state.pos.x < lo_x {
            state.pos.x = 2.0 * lo_x - state.pos.x;
            state.vel.x = -state.vel.x;
            WallSide::Left
        } else if state.pos.x > hi_x {
            state.pos.x = 2.0 * hi_x - state.pos.x;
            state.vel.x = -state.vel.x;
            WallSide::Right
        } else if state.pos.y < lo_y {
            state.pos.y = 2.0 * lo_y - state.pos.y;
            state.vel.y = -state.vel.y;
            WallSide::Top
        } else if state.pos.y > hi_y {
            state.pos.y = 2.0 * hi_y - state.pos.y;
            state.vel.y = -state.vel.y;
            WallSide::Bottom
        } else {
            return Ok(());
        };
        events.push(EventRecord::new(frame, fps, id, EventPayload::WallContact { side }));
    }
    Err(SimError::UnstableReflection(id.to_string()))
}

fn apply_attribute(
    style: &mut GlyphStyle,
    value: AttributeValue,
    frame: u32,
    fps: u32,
    id: &str,
    events: &mut Vec<EventRecord>,
) {
    let (attribute, old, new) = match value {
        AttributeValue::Color(c) => {
            let old = style.color.name().to_string();
            style.color = c;
            (tempogen_core::AttributeKind::Color, old, c.name().to_string())
        }
        AttributeValue::Size(s) => {
            let old = format!("{:.1}", style.size);
            style.size = s;
            (tempogen_core::AttributeKind::Size, old, format!("{s:.1}"))
        }
        AttributeValue::Shape(sh) => {
            let old = style.shape.name().to_string();
            style.shape = sh;
            (tempogen_core::AttributeKind::Shape, old, sh.name().to_string())
        }
    };
    events.push(EventRecord::new(
        frame,
        fps,
        id,
        EventPayload::AttributeChange { attribute, old, new },
    ));
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempogen_core::{Canvas, ColorName, EventKind, ObjectSpec, Shape, TaskType};

    fn spec_with(objects: Vec<ObjectSpec>, duration_s: f64) -> SceneSpec {
        SceneSpec {
            seed: 0,
            canvas: Canvas::new(400, 400),
            duration_s,
            fps: 30,
            objects,
            task_type: TaskType::CollisionCounting,
        }
    }

    fn ball(velocity: Vec2) -> ObjectSpec {
        ObjectSpec {
            id: "obj0".into(),
            shape: Shape::Circle,
            color: ColorName::Red,
            size: 10.0,
            position: Vec2::new(200.0, 200.0),
            velocity,
            angular_velocity: 0.0,
            tangential_accel: 0.0,
            turn_rate: 0.0,
            heading_changes: vec![],
            active_spans: vec![],
            attribute_schedule: vec![],
        }
    }

    #[test]
    fn zero_velocity_object_stays_put() {
        let trace = simulate(&spec_with(vec![ball(Vec2::ZERO)], 4.0)).unwrap();
        assert_eq!(trace.frame_count, 120);
        assert_eq!(trace.objects[0].positions.len(), 120);
        assert!(trace
            .objects[0]
            .positions
            .iter()
            .all(|p| *p == Vec2::new(200.0, 200.0)));
        assert_eq!(
            trace.events.iter().filter(|e| e.kind == EventKind::WallContact).count(),
            0
        );
    }

    #[test]
    fn two_seconds_at_30fps_is_60_frames() {
        let trace = simulate(&spec_with(vec![ball(Vec2::ZERO)], 2.0)).unwrap();
        assert_eq!(trace.frame_count, 60);
    }

    #[test]
    fn wall_contacts_match_stepwise_oracle() {
        // Independent oracle: replay the frame updates directly and count
        // sign flips of vx.
        let spec = spec_with(vec![ball(Vec2::new(100.0, 0.0))], 4.0);
        let trace = simulate(&spec).unwrap();

        let dt = 1.0 / 30.0;
        let (mut x, mut vx) = (200.0f64, 100.0f64);
        let mut flips = 0;
        for _ in 1..120 {
            x += vx * dt;
            if x < 10.0 {
                x = 20.0 - x;
                vx = -vx;
                flips += 1;
            } else if x > 390.0 {
                x = 780.0 - x;
                vx = -vx;
                flips += 1;
            }
        }
        let contacts = trace
            .events
            .iter()
            .filter(|e| e.kind == EventKind::WallContact)
            .count();
        assert_eq!(contacts, flips);
        assert!(contacts > 0);
    }

    #[test]
    fn reflection_preserves_speed() {
        let spec = spec_with(vec![ball(Vec2::new(173.0, -91.0))], 6.0);
        let trace = simulate(&spec).unwrap();
        let expected = (173.0f64.powi(2) + 91.0f64.powi(2)).sqrt();
        for v in &trace.objects[0].velocities {
            let rel = (v.length() - expected).abs() / expected;
            assert!(rel < 1e-9, "speed drifted by {rel}");
        }
        assert!(trace
            .events
            .iter()
            .any(|e| e.kind == EventKind::WallContact));
    }

    #[test]
    fn positions_stay_inside_canvas() {
        let spec = spec_with(vec![ball(Vec2::new(311.0, 222.0))], 6.0);
        let trace = simulate(&spec).unwrap();
        for p in &trace.objects[0].positions {
            assert!(p.x >= 10.0 - 1e-9 && p.x <= 390.0 + 1e-9);
            assert!(p.y >= 10.0 - 1e-9 && p.y <= 390.0 + 1e-9);
        }
    }

    #[test]
    fn oversized_object_rejected() {
        let mut obj = ball(Vec2::ZERO);
        obj.size = 201.0;
        obj.position = Vec2::new(200.0, 200.0);
        assert!(matches!(
            simulate(&spec_with(vec![obj], 2.0)),
            Err(SimError::ObjectTooLarge { .. })
        ));
    }

    #[test]
    fn rotation_events_fire_on_full_turns() {
        let mut obj = ball(Vec2::ZERO);
        obj.angular_velocity = 180.0;
        let trace = simulate(&spec_with(vec![obj], 4.0)).unwrap();
        let completions: Vec<u32> = trace
            .events
            .iter()
            .filter_map(|e| match &e.payload {
                tempogen_core::EventPayload::RotationComplete { completed } => Some(*completed),
                _ => None,
            })
            .collect();
        // 180 deg/s for 4 s (last frame at t=119/30) → one full turn.
        assert_eq!(completions, vec![1]);
        let last = *trace.objects[0].cumulative_rotation.last().unwrap();
        assert!((last - 180.0 * 119.0 / 30.0).abs() < 1e-9);
    }

    #[test]
    fn trace_is_deterministic_and_serializable() {
        let spec = spec_with(vec![ball(Vec2::new(87.0, 133.0))], 3.7);
        let a = serde_json::to_vec(&simulate(&spec).unwrap()).unwrap();
        let b = serde_json::to_vec(&simulate(&spec).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
