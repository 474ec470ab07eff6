//! Frame-by-frame simulation output.

use serde::{Deserialize, Serialize};
use tempogen_core::{Canvas, ColorName, EventRecord, Shape, Vec2};

/// Visual attributes of an object at one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlyphStyle {
    pub shape: Shape,
    pub color: ColorName,
    pub size: f64,
}

/// Per-frame record of one object.
///
/// All vectors have exactly `frame_count` entries. `velocities` holds the
/// effective velocity (zero while the object's motion is gated off);
/// `cumulative_rotation` is the signed angular displacement in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectTrace {
    pub id: String,
    pub label: String,
    pub positions: Vec<Vec2>,
    pub velocities: Vec<Vec2>,
    pub angles: Vec<f64>,
    pub cumulative_rotation: Vec<f64>,
    pub styles: Vec<GlyphStyle>,
}

impl ObjectTrace {
    /// Mean per-frame displacement, px — the speed proxy used for ranking.
    pub fn mean_frame_displacement(&self) -> f64 {
        if self.positions.len() < 2 {
            return 0.0;
        }
        let total: f64 = self
            .positions
            .windows(2)
            .map(|w| w[0].distance(w[1]))
            .sum();
        total / (self.positions.len() - 1) as f64
    }
}

/// Complete simulation output for one scene.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationTrace {
    pub canvas: Canvas,
    pub fps: u32,
    pub frame_count: usize,
    pub objects: Vec<ObjectTrace>,
    pub events: Vec<EventRecord>,
}

impl SimulationTrace {
    pub fn object(&self, id: &str) -> Option<&ObjectTrace> {
        self.objects.iter().find(|o| o.id == id)
    }
}
