//! Ground-truth answer values and their canonical text forms.
//!
//! Every task's derived answer is an [`AnswerValue`]; `canonical_text` is
//! the single string form used in QA records, sidecars, and reward
//! matching. Changing a rendering here changes the dataset format.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Eight-way compass direction as seen on screen ("up" = toward the top).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Compass8 {
    Right,
    UpRight,
    Up,
    UpLeft,
    Left,
    DownLeft,
    Down,
    DownRight,
}

impl Compass8 {
    pub const ALL: [Compass8; 8] = [
        Compass8::Right,
        Compass8::UpRight,
        Compass8::Up,
        Compass8::UpLeft,
        Compass8::Left,
        Compass8::DownLeft,
        Compass8::Down,
        Compass8::DownRight,
    ];

    /// Quantizes a heading (degrees, +90 = up) into 45° buckets centered on
    /// the axes and diagonals.
    pub fn from_heading_deg(heading: f64) -> Compass8 {
        let wrapped = heading.rem_euclid(360.0);
        let bucket = ((wrapped + 22.5) / 45.0).floor() as usize % 8;
        Compass8::ALL[bucket]
    }

    /// Angular distance from the nearest bucket boundary, degrees.
    /// Boundaries sit at 22.5° + k·45°.
    pub fn boundary_margin_deg(heading: f64) -> f64 {
        let wrapped = heading.rem_euclid(45.0);
        (wrapped - 22.5).abs()
    }

    pub fn text(self) -> &'static str {
        match self {
            Compass8::Right => "right",
            Compass8::UpRight => "up-right",
            Compass8::Up => "up",
            Compass8::UpLeft => "up-left",
            Compass8::Left => "left",
            Compass8::DownLeft => "down-left",
            Compass8::Down => "down",
            Compass8::DownRight => "down-right",
        }
    }
}

/// Trajectory shape classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryClass {
    Linear,
    Circular,
    Zigzag,
}

impl TrajectoryClass {
    pub const ALL: [TrajectoryClass; 3] = [
        TrajectoryClass::Linear,
        TrajectoryClass::Circular,
        TrajectoryClass::Zigzag,
    ];

    pub fn text(self) -> &'static str {
        match self {
            TrajectoryClass::Linear => "linear",
            TrajectoryClass::Circular => "circular",
            TrajectoryClass::Zigzag => "zigzag",
        }
    }
}

/// Binary faster/slower comparison of the subject against the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeedComparison {
    Faster,
    Slower,
}

impl SpeedComparison {
    pub fn text(self) -> &'static str {
        match self {
            SpeedComparison::Faster => "faster",
            SpeedComparison::Slower => "slower",
        }
    }
}

/// Three-way speed trend of a single object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeedTrend {
    SpeedingUp,
    SlowingDown,
    ConstantSpeed,
}

impl SpeedTrend {
    pub const ALL: [SpeedTrend; 3] = [
        SpeedTrend::SpeedingUp,
        SpeedTrend::SlowingDown,
        SpeedTrend::ConstantSpeed,
    ];

    pub fn text(self) -> &'static str {
        match self {
            SpeedTrend::SpeedingUp => "speeding up",
            SpeedTrend::SlowingDown => "slowing down",
            SpeedTrend::ConstantSpeed => "moving at constant speed",
        }
    }
}

/// Dominant-axis relative placement of the subject w.r.t. the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelativeDir {
    LeftOf,
    RightOf,
    Above,
    Below,
}

impl RelativeDir {
    pub const ALL: [RelativeDir; 4] = [
        RelativeDir::LeftOf,
        RelativeDir::RightOf,
        RelativeDir::Above,
        RelativeDir::Below,
    ];

    pub fn text(self) -> &'static str {
        match self {
            RelativeDir::LeftOf => "to the left of",
            RelativeDir::RightOf => "to the right of",
            RelativeDir::Above => "above",
            RelativeDir::Below => "below",
        }
    }
}

/// Three-way change in the distance between two objects over the clip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceChange {
    Closer,
    Farther,
    Unchanged,
}

impl DistanceChange {
    pub const ALL: [DistanceChange; 3] = [
        DistanceChange::Closer,
        DistanceChange::Farther,
        DistanceChange::Unchanged,
    ];

    pub fn text(self) -> &'static str {
        match self {
            DistanceChange::Closer => "closer together",
            DistanceChange::Farther => "farther apart",
            DistanceChange::Unchanged => "about the same distance",
        }
    }
}

/// A derived ground-truth answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum AnswerValue {
    Count(u32),
    Direction(Compass8),
    Trajectory(TrajectoryClass),
    SpeedComparison(SpeedComparison),
    SpeedTrend(SpeedTrend),
    /// Descriptor of the answering object, e.g. "red circle".
    ObjectLabel(String),
    /// Object descriptors in event order.
    EventOrder(Vec<String>),
    RelativeDir(RelativeDir),
    DistanceChange(DistanceChange),
    /// Realized attribute-change outcome, e.g. "blue" or "larger".
    AttributeOutcome(String),
    /// Canonical rendering of a scenario state (long-term answers).
    StateText(String),
    /// Canonical description of one operation (historical queries).
    OpText(String),
}

impl AnswerValue {
    pub fn canonical_text(&self) -> String {
        match self {
            AnswerValue::Count(n) => n.to_string(),
            AnswerValue::Direction(d) => d.text().to_string(),
            AnswerValue::Trajectory(t) => t.text().to_string(),
            AnswerValue::SpeedComparison(c) => c.text().to_string(),
            AnswerValue::SpeedTrend(t) => t.text().to_string(),
            AnswerValue::ObjectLabel(s) => format!("the {s}"),
            AnswerValue::EventOrder(labels) => labels
                .iter()
                .map(|l| format!("the {l}"))
                .collect::<Vec<_>>()
                .join(", then "),
            AnswerValue::RelativeDir(r) => r.text().to_string(),
            AnswerValue::DistanceChange(d) => d.text().to_string(),
            AnswerValue::AttributeOutcome(s) => s.clone(),
            AnswerValue::StateText(s) => s.clone(),
            AnswerValue::OpText(s) => s.clone(),
        }
    }
}

/// English count word for small n ("one", "two", ...). Long-term question
/// templates are digit-free so a hidden numeric state can never appear as
/// a substring of the question; counts are spelled out instead.
pub fn count_word(n: usize) -> String {
    const WORDS: [&str; 21] = [
        "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
        "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen",
        "eighteen", "nineteen", "twenty",
    ];
    WORDS.get(n).map(|w| w.to_string()).unwrap_or_else(|| n.to_string())
}

/// English ordinal word for small n ("first", "second", ...).
pub fn ordinal_word(n: usize) -> String {
    const WORDS: [&str; 21] = [
        "zeroth", "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth",
        "ninth", "tenth", "eleventh", "twelfth", "thirteenth", "fourteenth", "fifteenth",
        "sixteenth", "seventeenth", "eighteenth", "nineteenth", "twentieth",
    ];
    WORDS.get(n).map(|w| w.to_string()).unwrap_or_else(|| format!("{n}th"))
}

/// Derived answer plus the template fields needed to phrase a question
/// about it (subject/reference labels, timestamps, attribute names, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub value: AnswerValue,
    #[serde(default)]
    pub fields: BTreeMap<String, String>,
}

impl GroundTruth {
    pub fn new(value: AnswerValue) -> Self {
        GroundTruth { value, fields: BTreeMap::new() }
    }

    pub fn with_field(mut self, key: &str, value: impl Into<String>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn answer_text(&self) -> String {
        self.value.canonical_text()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compass_buckets_center_on_axes() {
        assert_eq!(Compass8::from_heading_deg(0.0), Compass8::Right);
        assert_eq!(Compass8::from_heading_deg(90.0), Compass8::Up);
        assert_eq!(Compass8::from_heading_deg(-90.0), Compass8::Down);
        assert_eq!(Compass8::from_heading_deg(180.0), Compass8::Left);
        assert_eq!(Compass8::from_heading_deg(44.0), Compass8::UpRight);
        assert_eq!(Compass8::from_heading_deg(22.4), Compass8::Right);
        assert_eq!(Compass8::from_heading_deg(22.6), Compass8::UpRight);
        assert_eq!(Compass8::from_heading_deg(360.0 + 90.0), Compass8::Up);
    }

    #[test]
    fn event_order_renders_with_then() {
        let v = AnswerValue::EventOrder(vec!["red circle".into(), "blue square".into()]);
        assert_eq!(v.canonical_text(), "the red circle, then the blue square");
    }
}
