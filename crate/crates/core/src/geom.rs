//! Small 2D geometry helpers shared by the simulator and renderer.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// 2D vector in pixel units. `y` grows downward (raster convention).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn length_squared(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).length()
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Heading of this vector in degrees: 0° points right, +90° points up
    /// (toward the top of the screen). Result is in (-180, 180].
    pub fn heading_deg(self) -> f64 {
        (-self.y).atan2(self.x).to_degrees()
    }

    /// Unit vector with the given heading (same convention as
    /// [`Vec2::heading_deg`]).
    pub fn from_heading_deg(heading: f64) -> Vec2 {
        let r = heading.to_radians();
        Vec2::new(r.cos(), -r.sin())
    }

    /// Rotates the vector by `deg` degrees counter-clockwise as seen on
    /// screen (i.e. a +90° rotation turns "right" into "up").
    pub fn rotated_deg(self, deg: f64) -> Vec2 {
        let r = deg.to_radians();
        let (s, c) = (r.sin(), r.cos());
        Vec2::new(self.x * c + self.y * s, -self.x * s + self.y * c)
    }

    pub fn scaled_to(self, length: f64) -> Vec2 {
        let cur = self.length();
        if cur <= f64::EPSILON {
            Vec2::ZERO
        } else {
            self * (length / cur)
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Canvas dimensions in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Canvas {
    pub width: u32,
    pub height: u32,
}

impl Canvas {
    pub fn new(width: u32, height: u32) -> Self {
        Canvas { width, height }
    }

    pub fn min_side(self) -> u32 {
        self.width.min(self.height)
    }

    /// True when `p` lies strictly inside the canvas.
    pub fn contains(self, p: Vec2) -> bool {
        p.x > 0.0 && p.y > 0.0 && p.x < self.width as f64 && p.y < self.height as f64
    }
}

impl Default for Canvas {
    fn default() -> Self {
        Canvas::new(448, 448)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heading_roundtrip() {
        for deg in [-135.0, -45.0, 0.0, 30.0, 90.0, 179.0] {
            let v = Vec2::from_heading_deg(deg) * 10.0;
            assert!((v.heading_deg() - deg).abs() < 1e-9, "heading {deg}");
        }
    }

    #[test]
    fn rotation_turns_right_into_up() {
        let right = Vec2::new(1.0, 0.0);
        let up = right.rotated_deg(90.0);
        assert!(up.x.abs() < 1e-12);
        assert!((up.y + 1.0).abs() < 1e-12, "up is -y on screen");
    }

    #[test]
    fn rotation_composes_with_heading() {
        let v = Vec2::from_heading_deg(20.0) * 3.0;
        let w = v.rotated_deg(45.0);
        assert!((w.heading_deg() - 65.0).abs() < 1e-9);
        assert!((w.length() - 3.0).abs() < 1e-12);
    }
}
