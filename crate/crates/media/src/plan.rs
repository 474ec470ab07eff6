//! Frame planning: scenes and scripts become ordered draw-command lists.
//!
//! The plan is the inspectable layer between simulation and pixels. Every
//! command carries a [`DrawTag`]; hidden-state rules are enforced (and
//! tested) on tags, not on rendered pixels: during operation phases and
//! hidden reveals no command may carry [`DrawTag::EntityGlyph`].

use serde::{Deserialize, Serialize};
use std::ops::Range;
use tempogen_core::{
    format_timestamp_s, ColorName, EventPayload, EventRecord, Rgb, ScenarioScript, Shape,
    StateSnapshot, Vec2, VisibleState,
};
use tempogen_sim::longterm::replay_forward;
use tempogen_sim::SimulationTrace;
use thiserror::Error;

/// Renderer configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderConfig {
    pub width: u32,
    pub height: u32,
    pub fps: u32,
    pub background: Rgb,
    pub antialias: bool,
    /// None = per-scene default (off for short-term, on for long-term).
    pub timestamp_overlay: Option<bool>,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            width: 448,
            height: 448,
            fps: 30,
            background: Rgb::new(245, 245, 245),
            antialias: true,
            timestamp_overlay: None,
        }
    }
}

/// What a draw command depicts, for occlusion checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DrawTag {
    /// Static scene furniture (container outlines, grid frames, labels).
    Chrome,
    /// Content of a state: the thing hidden-state rules protect.
    EntityGlyph,
    /// Cups, face-down cards, anonymous tiles: state-concealing covers.
    Occluder,
    /// Transient depiction of an operation (captions, flying chips).
    OpMotif,
    /// Timestamps and other always-on overlays.
    Overlay,
}

/// One drawing command. Coordinates are f64 pixels, origin top-left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "cmd", rename_all = "snake_case")]
pub enum DrawCmd {
    FillShape {
        shape: Shape,
        center: Vec2,
        size: f64,
        rotation_deg: f64,
        color: Rgb,
        tag: DrawTag,
        entity: Option<String>,
    },
    FillRect {
        x: f64,
        y: f64,
        w: f64,
        h: f64,
        color: Rgb,
        tag: DrawTag,
        entity: Option<String>,
    },
    StrokeRect {
        x: f64,
        y: f64,
        w: f64,
        h: f64,
        line: f64,
        color: Rgb,
        tag: DrawTag,
    },
    Line {
        from: Vec2,
        to: Vec2,
        width: f64,
        color: Rgb,
        tag: DrawTag,
    },
    Text {
        x: f64,
        y: f64,
        text: String,
        scale: u32,
        color: Rgb,
        tag: DrawTag,
        entity: Option<String>,
    },
}

impl DrawCmd {
    pub fn tag(&self) -> DrawTag {
        match self {
            DrawCmd::FillShape { tag, .. }
            | DrawCmd::FillRect { tag, .. }
            | DrawCmd::StrokeRect { tag, .. }
            | DrawCmd::Line { tag, .. }
            | DrawCmd::Text { tag, .. } => *tag,
        }
    }

    pub fn entity(&self) -> Option<&str> {
        match self {
            DrawCmd::FillShape { entity, .. }
            | DrawCmd::FillRect { entity, .. }
            | DrawCmd::Text { entity, .. } => entity.as_deref(),
            _ => None,
        }
    }
}

/// Phase of a frame within its video.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    InitialReveal,
    Operation,
    FinalReveal,
    ContinuousMotion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannedFrame {
    pub index: u32,
    pub phase: Phase,
    pub cmds: Vec<DrawCmd>,
}

/// The full per-frame draw program of one video.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramePlan {
    pub width: u32,
    pub height: u32,
    pub fps: u32,
    pub frames: Vec<PlannedFrame>,
}

impl FramePlan {
    /// Contiguous frame ranges per phase, in order.
    pub fn phase_ranges(&self) -> Vec<(Phase, Range<usize>)> {
        let mut out: Vec<(Phase, Range<usize>)> = Vec::new();
        for (i, frame) in self.frames.iter().enumerate() {
            match out.last_mut() {
                Some((phase, range)) if *phase == frame.phase && range.end == i => range.end = i + 1,
                _ => out.push((frame.phase, i..i + 1)),
            }
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("trace fps {trace} does not match render config fps {config}")]
    FpsMismatch { trace: u32, config: u32 },
    #[error("invalid script: {0}")]
    Script(#[from] tempogen_core::ScriptError),
    #[error("script does not replay: {0}")]
    Replay(#[from] tempogen_sim::ApplyError),
}

/// Frame counts per phase: `round(duration × fps)` each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSchedule {
    pub reveal_frames: usize,
    pub op_frames: Vec<usize>,
}

impl PhaseSchedule {
    pub fn total(&self) -> usize {
        2 * self.reveal_frames + self.op_frames.iter().sum::<usize>()
    }

    /// Frame index where operation `i` (0-based) starts.
    pub fn op_start(&self, i: usize) -> usize {
        self.reveal_frames + self.op_frames[..i].iter().sum::<usize>()
    }
}

pub fn phase_schedule(script: &ScenarioScript, fps: u32) -> PhaseSchedule {
    let frames_of = |seconds: f64| (seconds * fps as f64).round() as usize;
    PhaseSchedule {
        reveal_frames: frames_of(script.reveal_duration_s),
        op_frames: script.operations.iter().map(|op| frames_of(op.duration_s)).collect(),
    }
}

/// The event log of a scenario video: phase boundaries plus one
/// `operation_applied` per op at its start frame.
pub fn longterm_events(script: &ScenarioScript, fps: u32) -> Vec<EventRecord> {
    let schedule = phase_schedule(script, fps);
    let mut events = vec![EventRecord::new(
        0,
        fps,
        "scene",
        EventPayload::PhaseBoundary { phase: "initial_reveal".into() },
    )];
    for (i, op) in script.operations.iter().enumerate() {
        events.push(EventRecord::new(
            schedule.op_start(i) as u32,
            fps,
            format!("op{:02}", op.op_index),
            EventPayload::OperationApplied { op_index: op.op_index, description: op.description() },
        ));
    }
    events.push(EventRecord::new(
        schedule.op_start(script.operations.len()) as u32,
        fps,
        "scene",
        EventPayload::PhaseBoundary { phase: "final_reveal".into() },
    ));
    events
}

// Fixed palette for scene furniture.
const INK: Rgb = Rgb::new(40, 44, 52);
const OCCLUDER: Rgb = Rgb::new(108, 117, 134);
const CHROME: Rgb = Rgb::new(180, 185, 195);
const HIGHLIGHT: Rgb = Rgb::new(214, 39, 40);

/// Plans a short-term clip: one frame per trace frame, glyphs at trace
/// positions with trace attributes.
pub fn plan_shortterm(trace: &SimulationTrace, cfg: &RenderConfig) -> Result<FramePlan, PlanError> {
    if trace.fps != cfg.fps {
        return Err(PlanError::FpsMismatch { trace: trace.fps, config: cfg.fps });
    }
    let overlay = cfg.timestamp_overlay.unwrap_or(false);
    let mut frames = Vec::with_capacity(trace.frame_count);
    for i in 0..trace.frame_count {
        let mut cmds = Vec::with_capacity(trace.objects.len() + 1);
        for obj in &trace.objects {
            let style = obj.styles[i];
            cmds.push(DrawCmd::FillShape {
                shape: style.shape,
                center: obj.positions[i],
                size: style.size,
                rotation_deg: obj.angles[i],
                color: style.color.rgb(),
                tag: DrawTag::EntityGlyph,
                entity: Some(obj.id.clone()),
            });
        }
        if overlay {
            cmds.push(timestamp_cmd(i as u32, cfg));
        }
        frames.push(PlannedFrame { index: i as u32, phase: Phase::ContinuousMotion, cmds });
    }
    Ok(FramePlan { width: cfg.width, height: cfg.height, fps: cfg.fps, frames })
}

/// Plans a scenario video: reveal, animated operations, reveal.
pub fn plan_longterm(script: &ScenarioScript, cfg: &RenderConfig) -> Result<FramePlan, PlanError> {
    script.validate()?;
    let overlay = cfg.timestamp_overlay.unwrap_or(true);
    let schedule = phase_schedule(script, cfg.fps);
    let states = replay_forward(&script.initial, &script.operations)?;
    let layout = Layout::new(cfg);

    let mut frames: Vec<PlannedFrame> = Vec::with_capacity(schedule.total());
    let mut push = |phase: Phase, cmds: Vec<DrawCmd>, frames: &mut Vec<PlannedFrame>| {
        let index = frames.len() as u32;
        let mut cmds = cmds;
        if overlay {
            cmds.push(timestamp_cmd(index, cfg));
        }
        frames.push(PlannedFrame { index, phase, cmds });
    };

    let initial_visible = script.visible_state == VisibleState::InitialOnly;
    for _ in 0..schedule.reveal_frames {
        let cmds = if initial_visible {
            layout.reveal(&script.initial)
        } else {
            layout.hidden_reveal()
        };
        push(Phase::InitialReveal, cmds, &mut frames);
    }
    for (i, op) in script.operations.iter().enumerate() {
        let op_frames = schedule.op_frames[i];
        for f in 0..op_frames {
            // Progress hits 1.0 on the last frame of the animation.
            let t = if op_frames > 1 { f as f64 / (op_frames - 1) as f64 } else { 1.0 };
            let eased = t * t * (3.0 - 2.0 * t);
            let mut cmds = layout.operation(&states[i], op, eased);
            cmds.push(DrawCmd::Text {
                x: 12.0,
                y: 10.0,
                text: format!("STEP {}: {}", op.op_index, op.description().to_uppercase()),
                scale: 2,
                color: INK,
                tag: DrawTag::OpMotif,
                entity: None,
            });
            push(Phase::Operation, cmds, &mut frames);
        }
    }
    let final_visible = script.visible_state == VisibleState::FinalOnly;
    for _ in 0..schedule.reveal_frames {
        let cmds = if final_visible {
            layout.reveal(&script.final_state)
        } else {
            layout.hidden_reveal()
        };
        push(Phase::FinalReveal, cmds, &mut frames);
    }
    Ok(FramePlan { width: cfg.width, height: cfg.height, fps: cfg.fps, frames })
}

fn timestamp_cmd(frame: u32, cfg: &RenderConfig) -> DrawCmd {
    DrawCmd::Text {
        x: 10.0,
        y: cfg.height as f64 - 22.0,
        text: format_timestamp_s(frame, cfg.fps),
        scale: 2,
        color: INK,
        tag: DrawTag::Overlay,
        entity: None,
    }
}

/// Family-specific layout and animation rules.
struct Layout {
    w: f64,
    h: f64,
}

impl Layout {
    fn new(cfg: &RenderConfig) -> Self {
        Layout { w: cfg.width as f64, h: cfg.height as f64 }
    }

    fn lerp(a: Vec2, b: Vec2, t: f64) -> Vec2 {
        a + (b - a) * t
    }

    fn hidden_reveal(&self) -> Vec<DrawCmd> {
        vec![DrawCmd::Text {
            x: self.w / 2.0 - 15.0,
            y: self.h / 2.0 - 28.0,
            text: "?".into(),
            scale: 8,
            color: CHROME,
            tag: DrawTag::Overlay,
            entity: None,
        }]
    }

    /// Full-content rendering of a state (reveal phases only).
    fn reveal(&self, state: &StateSnapshot) -> Vec<DrawCmd> {
        let mut cmds = Vec::new();
        match state {
            StateSnapshot::ShellGame { cells } => {
                let n = cells.len();
                for (i, color) in cells.iter().enumerate() {
                    let c = self.cell_center(i, n);
                    cmds.push(DrawCmd::FillShape {
                        shape: Shape::Circle,
                        center: Vec2::new(c.x, c.y + 26.0),
                        size: 17.0,
                        rotation_deg: 0.0,
                        color: color.rgb(),
                        tag: DrawTag::EntityGlyph,
                        entity: Some(format!("ball{i}")),
                    });
                    self.cup(&mut cmds, Vec2::new(c.x, c.y - 26.0), i);
                }
            }
            StateSnapshot::CardStacks { stacks } => {
                let n = stacks.len();
                for (i, stack) in stacks.iter().enumerate() {
                    let base = self.stack_base(i, n);
                    self.stack_chrome(&mut cmds, base, i);
                    for (j, card) in stack.iter().enumerate() {
                        let y = base.y - 22.0 * j as f64;
                        cmds.push(DrawCmd::FillRect {
                            x: base.x - 30.0,
                            y: y - 20.0,
                            w: 60.0,
                            h: 40.0,
                            color: Rgb::new(255, 255, 255),
                            tag: DrawTag::EntityGlyph,
                            entity: Some(format!("card_s{i}_{j}")),
                        });
                        cmds.push(DrawCmd::StrokeRect {
                            x: base.x - 30.0,
                            y: y - 20.0,
                            w: 60.0,
                            h: 40.0,
                            line: 2.0,
                            color: INK,
                            tag: DrawTag::EntityGlyph,
                        });
                        cmds.push(DrawCmd::Text {
                            x: base.x - 5.0,
                            y: y - 7.0,
                            text: card.to_string(),
                            scale: 2,
                            color: INK,
                            tag: DrawTag::EntityGlyph,
                            entity: Some(format!("card_s{i}_{j}")),
                        });
                    }
                }
            }
            StateSnapshot::ChipContainers { counts } => {
                let n = counts.len();
                for (i, count) in counts.iter().enumerate() {
                    let c = self.container_center(i, n);
                    self.container_chrome(&mut cmds, c, i);
                    for j in 0..*count {
                        let col = (j % 4) as f64;
                        let row = (j / 4) as f64;
                        cmds.push(DrawCmd::FillShape {
                            shape: Shape::Circle,
                            center: Vec2::new(c.x - 27.0 + 18.0 * col, c.y + 30.0 - 18.0 * row),
                            size: 7.0,
                            rotation_deg: 0.0,
                            color: ColorName::ALL[i % 8].rgb(),
                            tag: DrawTag::EntityGlyph,
                            entity: Some(format!("chip_c{i}_{j}")),
                        });
                    }
                }
            }
            StateSnapshot::FileSystem { root, cwd } => {
                self.tree(&mut cmds, root, cwd);
            }
            StateSnapshot::SymbolRegister { value } => {
                let text = value.to_string();
                let scale = 8u32;
                let width = text.len() as f64 * 6.0 * scale as f64;
                cmds.push(DrawCmd::Text {
                    x: self.w / 2.0 - width / 2.0,
                    y: self.h / 2.0 - 28.0,
                    text,
                    scale,
                    color: INK,
                    tag: DrawTag::EntityGlyph,
                    entity: Some("register".into()),
                });
            }
            StateSnapshot::SlidingPuzzle { width, height, tiles } => {
                self.puzzle_frame(&mut cmds, *width, *height);
                for (idx, tile) in tiles.iter().enumerate() {
                    if *tile == 0 {
                        continue;
                    }
                    let c = self.tile_center(idx, *width, *height);
                    self.tile(&mut cmds, c, Some(*tile), idx);
                }
            }
        }
        cmds
    }

    /// Operation animation; must emit no EntityGlyph commands.
    fn operation(&self, before: &StateSnapshot, op: &tempogen_core::Operation, t: f64) -> Vec<DrawCmd> {
        use tempogen_core::OpAction;
        let mut cmds = Vec::new();
        match (&op.action, before) {
            (OpAction::Swap { a, b }, StateSnapshot::ShellGame { cells }) => {
                let n = cells.len();
                // Swapping cups trade places along opposite vertical arcs.
                let lift = (t * std::f64::consts::PI).sin() * 34.0;
                for i in 0..n {
                    let base = self.cell_center(i, n);
                    let pos = if i == *a {
                        let target = self.cell_center(*b, n);
                        Vec2::new(
                            base.x + (target.x - base.x) * t,
                            base.y - 26.0 - lift,
                        )
                    } else if i == *b {
                        let target = self.cell_center(*a, n);
                        Vec2::new(
                            base.x + (target.x - base.x) * t,
                            base.y - 26.0 + lift,
                        )
                    } else {
                        Vec2::new(base.x, base.y - 26.0)
                    };
                    self.cup(&mut cmds, pos, i);
                }
            }
            (_, StateSnapshot::ShellGame { cells }) => {
                let n = cells.len();
                for i in 0..n {
                    let base = self.cell_center(i, n);
                    self.cup(&mut cmds, Vec2::new(base.x, base.y - 26.0), i);
                }
            }
            (action, StateSnapshot::CardStacks { stacks }) => {
                let n = stacks.len();
                for i in 0..n {
                    self.deck_box(&mut cmds, i, n);
                }
                let top_entry = |i: usize| {
                    let b = self.stack_base(i, n);
                    Vec2::new(b.x, b.y - 60.0)
                };
                let edge = Vec2::new(self.w / 2.0, 60.0);
                let path = match action {
                    OpAction::Push { stack, .. } => Some((edge, top_entry(*stack))),
                    OpAction::Pop { stack, .. } => Some((top_entry(*stack), edge)),
                    OpAction::MoveTop { from, to } => Some((top_entry(*from), top_entry(*to))),
                    _ => None,
                };
                if let Some((from, to)) = path {
                    let pos = Self::lerp(from, to, t);
                    self.face_down_card(&mut cmds, pos);
                }
            }
            (OpAction::Transfer { count, from, to }, StateSnapshot::ChipContainers { counts }) => {
                let n = counts.len();
                for i in 0..n {
                    self.closed_container(&mut cmds, i, n);
                }
                let a = self.container_center(*from, n);
                let b = self.container_center(*to, n);
                for j in 0..*count {
                    // Chips trail each other along the same path.
                    let phase = (t * 1.3 - 0.3 * j as f64 / (*count).max(1) as f64).clamp(0.0, 1.0);
                    let pos = Self::lerp(a, b, phase);
                    let wob = ((phase * std::f64::consts::PI).sin()) * 26.0;
                    cmds.push(DrawCmd::FillShape {
                        shape: Shape::Circle,
                        center: Vec2::new(pos.x, pos.y - 46.0 - wob),
                        size: 7.0,
                        rotation_deg: 0.0,
                        color: OCCLUDER,
                        tag: DrawTag::OpMotif,
                        entity: None,
                    });
                }
            }
            (action, StateSnapshot::FileSystem { .. }) => {
                // Folder motif gliding across the middle of the frame.
                let name = match action {
                    OpAction::Enter { dir }
                    | OpAction::Leave { dir }
                    | OpAction::CreateDir { dir }
                    | OpAction::RemoveDir { dir } => dir.clone(),
                    _ => String::new(),
                };
                let from = Vec2::new(self.w * 0.25, self.h * 0.5);
                let to = Vec2::new(self.w * 0.75, self.h * 0.5);
                let pos = Self::lerp(from, to, t);
                cmds.push(DrawCmd::FillRect {
                    x: pos.x - 34.0,
                    y: pos.y - 24.0,
                    w: 68.0,
                    h: 48.0,
                    color: OCCLUDER,
                    tag: DrawTag::OpMotif,
                    entity: None,
                });
                cmds.push(DrawCmd::FillRect {
                    x: pos.x - 34.0,
                    y: pos.y - 34.0,
                    w: 28.0,
                    h: 10.0,
                    color: OCCLUDER,
                    tag: DrawTag::OpMotif,
                    entity: None,
                });
                cmds.push(DrawCmd::Text {
                    x: pos.x - 6.0 * name.len() as f64,
                    y: pos.y + 34.0,
                    text: name.to_uppercase(),
                    scale: 2,
                    color: INK,
                    tag: DrawTag::OpMotif,
                    entity: None,
                });
            }
            (action, StateSnapshot::SymbolRegister { .. }) => {
                let text = match action {
                    OpAction::Add { k } => format!("+{k}"),
                    OpAction::Sub { k } => format!("-{k}"),
                    OpAction::Mul { k } => format!("x{k}"),
                    OpAction::Div { k } => format!("/{k}"),
                    _ => String::new(),
                };
                let scale = 8u32;
                let width = text.len() as f64 * 6.0 * scale as f64;
                let rise = 20.0 * (1.0 - t);
                cmds.push(DrawCmd::Text {
                    x: self.w / 2.0 - width / 2.0,
                    y: self.h / 2.0 - 28.0 + rise,
                    text,
                    scale,
                    color: OCCLUDER,
                    tag: DrawTag::OpMotif,
                    entity: None,
                });
            }
            (OpAction::Slide { .. }, StateSnapshot::SlidingPuzzle { width, height, tiles }) => {
                self.puzzle_frame(&mut cmds, *width, *height);
                let blank = tiles.iter().position(|&x| x == 0).unwrap_or(0);
                let op_probe = tempogen_core::Operation {
                    op_index: op.op_index,
                    duration_s: op.duration_s,
                    action: op.action.clone(),
                };
                // The tile that slides is the one the blank swaps with.
                let after = tempogen_sim::apply(before, &op_probe).ok();
                let moving_from = after
                    .as_ref()
                    .and_then(|s| match s {
                        StateSnapshot::SlidingPuzzle { tiles: t2, .. } => {
                            t2.iter().position(|&x| x == 0)
                        }
                        _ => None,
                    })
                    .unwrap_or(blank);
                for (idx, tile) in tiles.iter().enumerate() {
                    if *tile == 0 {
                        continue;
                    }
                    let pos = if idx == moving_from {
                        Self::lerp(
                            self.tile_center(idx, *width, *height),
                            self.tile_center(blank, *width, *height),
                            t,
                        )
                    } else {
                        self.tile_center(idx, *width, *height)
                    };
                    self.tile(&mut cmds, pos, None, idx);
                }
            }
            _ => {}
        }
        cmds
    }

    // -- shared furniture --

    fn cell_center(&self, i: usize, n: usize) -> Vec2 {
        let x = self.w * (i + 1) as f64 / (n + 1) as f64;
        Vec2::new(x, self.h * 0.58)
    }

    fn cup(&self, cmds: &mut Vec<DrawCmd>, pos: Vec2, index: usize) {
        cmds.push(DrawCmd::FillRect {
            x: pos.x - 30.0,
            y: pos.y - 30.0,
            w: 60.0,
            h: 62.0,
            color: OCCLUDER,
            tag: DrawTag::Occluder,
            entity: None,
        });
        cmds.push(DrawCmd::Text {
            x: pos.x - 5.0,
            y: pos.y + 44.0,
            text: (index + 1).to_string(),
            scale: 2,
            color: INK,
            tag: DrawTag::Chrome,
            entity: None,
        });
    }

    fn stack_base(&self, i: usize, n: usize) -> Vec2 {
        Vec2::new(self.w * (i + 1) as f64 / (n + 1) as f64, self.h * 0.72)
    }

    fn stack_chrome(&self, cmds: &mut Vec<DrawCmd>, base: Vec2, index: usize) {
        cmds.push(DrawCmd::Line {
            from: Vec2::new(base.x - 40.0, base.y + 24.0),
            to: Vec2::new(base.x + 40.0, base.y + 24.0),
            width: 3.0,
            color: CHROME,
            tag: DrawTag::Chrome,
        });
        cmds.push(DrawCmd::Text {
            x: base.x - 38.0,
            y: base.y + 34.0,
            text: format!("STACK {}", index + 1),
            scale: 1,
            color: INK,
            tag: DrawTag::Chrome,
            entity: None,
        });
    }

    fn deck_box(&self, cmds: &mut Vec<DrawCmd>, i: usize, n: usize) {
        let base = self.stack_base(i, n);
        cmds.push(DrawCmd::FillRect {
            x: base.x - 34.0,
            y: base.y - 44.0,
            w: 68.0,
            h: 70.0,
            color: OCCLUDER,
            tag: DrawTag::Occluder,
            entity: None,
        });
        cmds.push(DrawCmd::Text {
            x: base.x - 38.0,
            y: base.y + 34.0,
            text: format!("STACK {}", i + 1),
            scale: 1,
            color: INK,
            tag: DrawTag::Chrome,
            entity: None,
        });
    }

    fn face_down_card(&self, cmds: &mut Vec<DrawCmd>, pos: Vec2) {
        cmds.push(DrawCmd::FillRect {
            x: pos.x - 26.0,
            y: pos.y - 18.0,
            w: 52.0,
            h: 36.0,
            color: OCCLUDER,
            tag: DrawTag::Occluder,
            entity: None,
        });
        cmds.push(DrawCmd::StrokeRect {
            x: pos.x - 26.0,
            y: pos.y - 18.0,
            w: 52.0,
            h: 36.0,
            line: 2.0,
            color: INK,
            tag: DrawTag::Occluder,
        });
    }

    fn container_center(&self, i: usize, n: usize) -> Vec2 {
        Vec2::new(self.w * (i + 1) as f64 / (n + 1) as f64, self.h * 0.62)
    }

    fn container_chrome(&self, cmds: &mut Vec<DrawCmd>, c: Vec2, index: usize) {
        cmds.push(DrawCmd::StrokeRect {
            x: c.x - 40.0,
            y: c.y - 46.0,
            w: 80.0,
            h: 92.0,
            line: 3.0,
            color: INK,
            tag: DrawTag::Chrome,
        });
        cmds.push(DrawCmd::Text {
            x: c.x - 5.0,
            y: c.y + 56.0,
            text: tempogen_core::state::container_letter(index).to_string(),
            scale: 2,
            color: INK,
            tag: DrawTag::Chrome,
            entity: None,
        });
    }

    fn closed_container(&self, cmds: &mut Vec<DrawCmd>, i: usize, n: usize) {
        let c = self.container_center(i, n);
        cmds.push(DrawCmd::FillRect {
            x: c.x - 40.0,
            y: c.y - 46.0,
            w: 80.0,
            h: 92.0,
            color: OCCLUDER,
            tag: DrawTag::Occluder,
            entity: None,
        });
        cmds.push(DrawCmd::Text {
            x: c.x - 5.0,
            y: c.y + 56.0,
            text: tempogen_core::state::container_letter(i).to_string(),
            scale: 2,
            color: INK,
            tag: DrawTag::Chrome,
            entity: None,
        });
    }

    fn tree(&self, cmds: &mut Vec<DrawCmd>, root: &tempogen_core::DirNode, cwd: &[String]) {
        let root_pos = Vec2::new(self.w / 2.0, 90.0);
        self.tree_node(cmds, root, root_pos, self.w * 0.8, &mut Vec::new(), cwd);
    }

    #[allow(clippy::too_many_arguments)]
    fn tree_node(
        &self,
        cmds: &mut Vec<DrawCmd>,
        node: &tempogen_core::DirNode,
        pos: Vec2,
        span: f64,
        path: &mut Vec<String>,
        cwd: &[String],
    ) {
        let n = node.children.len();
        for (i, child) in node.children.iter().enumerate() {
            let x = pos.x - span / 2.0 + span * (i as f64 + 0.5) / n as f64;
            let child_pos = Vec2::new(x, pos.y + 86.0);
            cmds.push(DrawCmd::Line {
                from: Vec2::new(pos.x, pos.y + 14.0),
                to: Vec2::new(child_pos.x, child_pos.y - 14.0),
                width: 2.0,
                color: CHROME,
                tag: DrawTag::EntityGlyph,
            });
            path.push(child.name.clone());
            self.tree_node(cmds, child, child_pos, span / n as f64, path, cwd);
            path.pop();
        }
        let is_cwd = path.as_slice() == cwd;
        cmds.push(DrawCmd::FillRect {
            x: pos.x - 34.0,
            y: pos.y - 14.0,
            w: 68.0,
            h: 28.0,
            color: if is_cwd { HIGHLIGHT } else { Rgb::new(255, 255, 255) },
            tag: DrawTag::EntityGlyph,
            entity: Some(format!("dir_{}", node.name)),
        });
        cmds.push(DrawCmd::StrokeRect {
            x: pos.x - 34.0,
            y: pos.y - 14.0,
            w: 68.0,
            h: 28.0,
            line: 2.0,
            color: INK,
            tag: DrawTag::EntityGlyph,
        });
        let label = if node.name == "/" { "/".to_string() } else { node.name.to_uppercase() };
        cmds.push(DrawCmd::Text {
            x: pos.x - 3.0 * label.len() as f64 * 2.0,
            y: pos.y - 7.0,
            text: label,
            scale: 2,
            color: if is_cwd { Rgb::new(255, 255, 255) } else { INK },
            tag: DrawTag::EntityGlyph,
            entity: Some(format!("dirlabel_{}", node.name)),
        });
    }

    fn puzzle_frame(&self, cmds: &mut Vec<DrawCmd>, width: u8, height: u8) {
        let tile = 64.0;
        let w = width as f64 * tile;
        let h = height as f64 * tile;
        cmds.push(DrawCmd::StrokeRect {
            x: self.w / 2.0 - w / 2.0 - 5.0,
            y: self.h / 2.0 - h / 2.0 - 5.0,
            w: w + 10.0,
            h: h + 10.0,
            line: 3.0,
            color: INK,
            tag: DrawTag::Chrome,
        });
    }

    fn tile_center(&self, idx: usize, width: u8, height: u8) -> Vec2 {
        let tile = 64.0;
        let (row, col) = (idx / width as usize, idx % width as usize);
        let origin_x = self.w / 2.0 - width as f64 * tile / 2.0;
        let origin_y = self.h / 2.0 - height as f64 * tile / 2.0;
        Vec2::new(
            origin_x + tile * (col as f64 + 0.5),
            origin_y + tile * (row as f64 + 0.5),
        )
    }

    /// A tile face: numbered when `value` is Some (reveal), anonymous
    /// otherwise (operation phases).
    fn tile(&self, cmds: &mut Vec<DrawCmd>, pos: Vec2, value: Option<u8>, idx: usize) {
        let (color, tag) = match value {
            Some(_) => (Rgb::new(255, 255, 255), DrawTag::EntityGlyph),
            None => (OCCLUDER, DrawTag::Occluder),
        };
        cmds.push(DrawCmd::FillRect {
            x: pos.x - 28.0,
            y: pos.y - 28.0,
            w: 56.0,
            h: 56.0,
            color,
            tag,
            entity: value.map(|_| format!("tile{idx}")),
        });
        cmds.push(DrawCmd::StrokeRect {
            x: pos.x - 28.0,
            y: pos.y - 28.0,
            w: 56.0,
            h: 56.0,
            line: 2.0,
            color: INK,
            tag,
        });
        if let Some(v) = value {
            cmds.push(DrawCmd::Text {
                x: pos.x - 6.0,
                y: pos.y - 14.0,
                text: v.to_string(),
                scale: 4,
                color: INK,
                tag: DrawTag::EntityGlyph,
                entity: Some(format!("tileval{idx}")),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempogen_core::{Canvas, Difficulty, Family, QuestionMode, TaskType};
    use tempogen_sim::{generate_longterm_sample, generate_shortterm_sample, simulate};

    fn cfg() -> RenderConfig {
        RenderConfig::default()
    }

    #[test]
    fn shortterm_plan_has_one_frame_per_trace_frame() {
        let sample = generate_shortterm_sample(
            TaskType::CollisionCounting,
            4,
            Difficulty::Standard,
            Canvas::default(),
            30,
        )
        .unwrap();
        let plan = plan_shortterm(&sample.trace, &cfg()).unwrap();
        assert_eq!(plan.frames.len(), sample.trace.frame_count);
        // Glyph centers equal trace positions at sampled frames.
        for idx in [0usize, 7, 31, plan.frames.len() - 1] {
            let DrawCmd::FillShape { center, .. } = &plan.frames[idx].cmds[0] else {
                panic!("first cmd should be the object glyph");
            };
            assert_eq!(*center, sample.trace.objects[0].positions[idx]);
        }
    }

    #[test]
    fn fps_mismatch_is_rejected() {
        let sample = generate_shortterm_sample(
            TaskType::MotionCounting,
            2,
            Difficulty::Standard,
            Canvas::default(),
            30,
        )
        .unwrap();
        let mut config = cfg();
        config.fps = 24;
        assert!(matches!(
            plan_shortterm(&sample.trace, &config),
            Err(PlanError::FpsMismatch { .. })
        ));
    }

    #[test]
    fn attribute_change_lands_exactly_on_its_frame() {
        let sample = generate_shortterm_sample(
            TaskType::AttributeChange,
            6,
            Difficulty::Standard,
            Canvas::default(),
            30,
        )
        .unwrap();
        let change_frame = sample
            .trace
            .events
            .iter()
            .find(|e| e.kind == tempogen_core::EventKind::AttributeChange)
            .unwrap()
            .frame_index as usize;
        let plan = plan_shortterm(&sample.trace, &cfg()).unwrap();
        let color_at = |i: usize| match &plan.frames[i].cmds[0] {
            DrawCmd::FillShape { color, size, shape, .. } => (*color, *size, *shape),
            _ => panic!(),
        };
        assert_ne!(color_at(change_frame - 1), color_at(change_frame));
        assert_eq!(color_at(change_frame), color_at(change_frame + 1));
    }

    #[test]
    fn longterm_phases_partition_and_match_the_duration_law() {
        let sample = generate_longterm_sample(
            Family::ShellGame,
            QuestionMode::ForwardPrediction,
            11,
            Difficulty::Standard,
            3,
        )
        .unwrap();
        let plan = plan_longterm(&sample.script, &cfg()).unwrap();
        let schedule = phase_schedule(&sample.script, 30);
        assert_eq!(plan.frames.len(), schedule.total());
        let ranges = plan.phase_ranges();
        assert_eq!(ranges.len(), 3);
        assert_eq!(ranges[0].0, Phase::InitialReveal);
        assert_eq!(ranges[0].1.len(), 60);
        assert_eq!(ranges[1].0, Phase::Operation);
        assert_eq!(ranges[2].0, Phase::FinalReveal);
        assert_eq!(ranges[2].1.len(), 60);
        for (i, frames) in schedule.op_frames.iter().enumerate() {
            assert!((15..=30).contains(frames), "op {i} spans {frames} frames");
        }
    }

    #[test]
    fn hidden_reveal_carries_no_entity_glyphs() {
        let sample = generate_longterm_sample(
            Family::ShellGame,
            QuestionMode::RetrodictiveInference,
            13,
            Difficulty::Standard,
            3,
        )
        .unwrap();
        let plan = plan_longterm(&sample.script, &cfg()).unwrap();
        for frame in &plan.frames {
            match frame.phase {
                Phase::InitialReveal | Phase::Operation => {
                    assert!(
                        frame.cmds.iter().all(|c| c.tag() != DrawTag::EntityGlyph),
                        "entity glyph leaked into frame {}",
                        frame.index
                    );
                }
                Phase::FinalReveal => {
                    assert!(frame.cmds.iter().any(|c| c.tag() == DrawTag::EntityGlyph));
                }
                Phase::ContinuousMotion => unreachable!(),
            }
        }
    }

    #[test]
    fn operation_events_align_with_op_starts() {
        let sample = generate_longterm_sample(
            Family::SymbolRegister,
            QuestionMode::ForwardPrediction,
            17,
            Difficulty::Standard,
            3,
        )
        .unwrap();
        let events = longterm_events(&sample.script, 30);
        let schedule = phase_schedule(&sample.script, 30);
        let op_events: Vec<u32> = events
            .iter()
            .filter(|e| e.kind == tempogen_core::EventKind::OperationApplied)
            .map(|e| e.frame_index)
            .collect();
        assert_eq!(op_events.len(), sample.script.op_count());
        for (i, frame) in op_events.iter().enumerate() {
            assert_eq!(*frame as usize, schedule.op_start(i));
        }
        assert_eq!(events.first().unwrap().frame_index, 0);
    }
}
