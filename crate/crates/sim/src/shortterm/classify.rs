//! Trajectory shape classification from the position trace.
//!
//! Thresholds: linear when the maximum perpendicular deviation from the
//! total-least-squares line is under 2% of the path length; circular when
//! the worst radial residual of an algebraic circle fit is under 2% of the
//! fitted radius; zigzag when at least three heading turns exceed 60°.
//! Checked in that order; traces matching none are unclassifiable and the
//! scene is discarded.

use super::trace::SimulationTrace;
use tempogen_core::{TrajectoryClass, Vec2};
use thiserror::Error;

const LINEAR_DEVIATION_FRAC: f64 = 0.02;
const CIRCLE_RESIDUAL_FRAC: f64 = 0.02;
const ZIGZAG_TURN_DEG: f64 = 60.0;
const ZIGZAG_MIN_REVERSALS: usize = 3;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("object {0:?} not present in the trace")]
    UnknownObject(String),
    #[error("trace too short to classify ({0} frames, need at least 10)")]
    TooShort(usize),
    #[error("trajectory matches no template within thresholds")]
    Unclassifiable,
    #[error("object barely moves; no trajectory to classify")]
    Stationary,
}

/// Classifies the motion path of `object_id` within the trace.
pub fn classify_trajectory(
    trace: &SimulationTrace,
    object_id: &str,
) -> Result<TrajectoryClass, ClassifyError> {
    let object = trace
        .object(object_id)
        .ok_or_else(|| ClassifyError::UnknownObject(object_id.to_string()))?;
    let points = &object.positions;
    if points.len() < 10 {
        return Err(ClassifyError::TooShort(points.len()));
    }

    let path_length: f64 = points.windows(2).map(|w| w[0].distance(w[1])).sum();
    if path_length < 1.0 {
        return Err(ClassifyError::Stationary);
    }

    if max_line_deviation(points) < LINEAR_DEVIATION_FRAC * path_length {
        return Ok(TrajectoryClass::Linear);
    }
    if let Some((center, radius)) = fit_circle(points) {
        let worst = points
            .iter()
            .map(|p| (p.distance(center) - radius).abs())
            .fold(0.0, f64::max);
        if radius > 1.0 && worst < CIRCLE_RESIDUAL_FRAC * radius {
            return Ok(TrajectoryClass::Circular);
        }
    }
    if count_heading_reversals(points, ZIGZAG_TURN_DEG) >= ZIGZAG_MIN_REVERSALS {
        return Ok(TrajectoryClass::Zigzag);
    }
    Err(ClassifyError::Unclassifiable)
}

/// Maximum perpendicular distance of the points from their total
/// least-squares line (principal axis through the centroid).
fn max_line_deviation(points: &[Vec2]) -> f64 {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.x).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.y).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let (dx, dy) = (p.x - cx, p.y - cy);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // Principal direction of the 2x2 covariance matrix.
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let dir = Vec2::new(theta.cos(), theta.sin());
    points
        .iter()
        .map(|p| {
            let d = Vec2::new(p.x - cx, p.y - cy);
            (d.x * dir.y - d.y * dir.x).abs()
        })
        .fold(0.0, f64::max)
}

/// Algebraic (Kåsa) circle fit: least squares on
/// x² + y² + D·x + E·y + F = 0. Returns None for degenerate (collinear)
/// input.
fn fit_circle(points: &[Vec2]) -> Option<(Vec2, f64)> {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let (mut sxz, mut syz, mut sz) = (0.0, 0.0, 0.0);
    for p in points {
        let z = p.x * p.x + p.y * p.y;
        sx += p.x;
        sy += p.y;
        sxx += p.x * p.x;
        syy += p.y * p.y;
        sxy += p.x * p.y;
        sxz += p.x * z;
        syz += p.y * z;
        sz += z;
    }
    // Normal equations for [D, E, F].
    let mut m = [
        [sxx, sxy, sx, -sxz],
        [sxy, syy, sy, -syz],
        [sx, sy, n, -sz],
    ];
    solve3(&mut m).map(|[d, e, f]| {
        let center = Vec2::new(-d / 2.0, -e / 2.0);
        let r2 = center.length_squared() - f;
        (center, r2.max(0.0).sqrt())
    })
}

/// Gaussian elimination with partial pivoting on a 3x4 system.
fn solve3(m: &mut [[f64; 4]; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| {
            m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap()
        })?;
        if m[pivot][col].abs() < 1e-9 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let factor = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= factor * m[col][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Counts heading turns whose magnitude exceeds `threshold_deg`, measured
/// between consecutive displacement segments (zero-length segments skipped).
fn count_heading_reversals(points: &[Vec2], threshold_deg: f64) -> usize {
    let mut reversals = 0;
    let mut prev_dir: Option<Vec2> = None;
    for w in points.windows(2) {
        let seg = w[1] - w[0];
        if seg.length() < 1e-9 {
            continue;
        }
        if let Some(prev) = prev_dir {
            let cos = prev.dot(seg) / (prev.length() * seg.length());
            let angle = cos.clamp(-1.0, 1.0).acos().to_degrees();
            if angle > threshold_deg {
                reversals += 1;
            }
        }
        prev_dir = Some(seg);
    }
    reversals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shortterm::trace::{GlyphStyle, ObjectTrace};
    use tempogen_core::{Canvas, ColorName, Shape};

    fn trace_from_points(points: Vec<Vec2>) -> SimulationTrace {
        let n = points.len();
        SimulationTrace {
            canvas: Canvas::new(448, 448),
            fps: 30,
            frame_count: n,
            objects: vec![ObjectTrace {
                id: "obj0".into(),
                label: "red circle".into(),
                positions: points,
                velocities: vec![Vec2::ZERO; n],
                angles: vec![0.0; n],
                cumulative_rotation: vec![0.0; n],
                styles: vec![GlyphStyle {
                    shape: Shape::Circle,
                    color: ColorName::Red,
                    size: 10.0,
                }; n],
            }],
            events: vec![],
        }
    }

    #[test]
    fn exact_line_classifies_linear() {
        let points: Vec<Vec2> = (0..60)
            .map(|i| Vec2::new(i as f64, 2.0 * i as f64 + 1.0))
            .collect();
        let trace = trace_from_points(points);
        assert_eq!(
            classify_trajectory(&trace, "obj0").unwrap(),
            TrajectoryClass::Linear
        );
    }

    #[test]
    fn circle_samples_classify_circular() {
        // Points exactly on a circle of radius 100, every 3 degrees.
        let points: Vec<Vec2> = (0..120)
            .map(|i| {
                let a = (i as f64 * 3.0).to_radians();
                Vec2::new(200.0 + 100.0 * a.cos(), 200.0 + 100.0 * a.sin())
            })
            .collect();
        let trace = trace_from_points(points);
        assert_eq!(
            classify_trajectory(&trace, "obj0").unwrap(),
            TrajectoryClass::Circular
        );
    }

    #[test]
    fn sharp_turns_classify_zigzag() {
        // Six ~90-degree heading reversals. Oracle: count sign changes of
        // heading deltas directly while building the path.
        let mut points = vec![Vec2::new(50.0, 200.0)];
        let mut dir = Vec2::new(1.0, 0.0);
        let mut oracle_reversals = 0;
        for leg in 0..7 {
            for _ in 0..10 {
                let last = *points.last().unwrap();
                points.push(last + dir * 5.0);
            }
            if leg < 6 {
                let turn = if leg % 2 == 0 { 88.0 } else { -88.0 };
                dir = dir.rotated_deg(turn);
                oracle_reversals += 1;
            }
        }
        assert_eq!(oracle_reversals, 6);
        let trace = trace_from_points(points.clone());
        assert_eq!(count_heading_reversals(&points, 60.0), 6);
        assert_eq!(
            classify_trajectory(&trace, "obj0").unwrap(),
            TrajectoryClass::Zigzag
        );
    }

    #[test]
    fn gentle_curve_is_unclassifiable() {
        // A parabola: neither line, circle, nor zigzag at these thresholds.
        let points: Vec<Vec2> = (0..80)
            .map(|i| {
                let x = i as f64 * 4.0;
                Vec2::new(x, 10.0 + 0.02 * x * x)
            })
            .collect();
        let trace = trace_from_points(points);
        assert!(matches!(
            classify_trajectory(&trace, "obj0"),
            Err(ClassifyError::Unclassifiable)
        ));
    }

    #[test]
    fn short_trace_rejected() {
        let points: Vec<Vec2> = (0..5).map(|i| Vec2::new(i as f64, 0.0)).collect();
        let trace = trace_from_points(points);
        assert!(matches!(
            classify_trajectory(&trace, "obj0"),
            Err(ClassifyError::TooShort(5))
        ));
    }
}
