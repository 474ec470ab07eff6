//! Shared domain model for the tempogen synthetic video toolkit.
//!
//! This crate holds everything the other crates read and write: scene and
//! scenario descriptions, the frame-indexed event log, QA records, the
//! dataset manifest schema, and the seeded randomness contract. All types
//! are plain values — immutable once constructed and safe to share across
//! worker threads.
//!
//! Conventions used throughout the workspace:
//!
//! * lengths are in pixels, times in seconds, angles in degrees;
//! * the canvas origin is the top-left corner with `y` growing downward;
//! * headings are measured from the +x axis with "up" (toward the top of
//!   the screen) at +90°, so compass directions read naturally on screen.

pub mod answer;
pub mod event;
pub mod geom;
pub mod manifest;
pub mod palette;
pub mod qa;
pub mod rng;
pub mod scene;
pub mod script;
pub mod sidecar;
pub mod state;

pub use answer::{
    count_word, ordinal_word, AnswerValue, Compass8, DistanceChange, GroundTruth, RelativeDir,
    SpeedComparison, SpeedTrend, TrajectoryClass,
};
pub use event::{
    format_timestamp_ms, format_timestamp_s, sort_events, EventKind, EventPayload, EventRecord,
    WallSide,
};
pub use geom::{Canvas, Vec2};
pub use manifest::{
    DatasetManifest, DatasetSplit, ManifestError, ManifestRecord, Provenance, ScenarioParams,
    MANIFEST_FORMAT_VERSION,
};
pub use palette::{ColorName, Rgb};
pub use qa::{QASample, QaInvariantError, SampleKind};
pub use rng::{derive_seed, new_rng, Rng64};
pub use scene::{
    AttributeChange, AttributeKind, AttributeValue, Difficulty, HeadingChange, ObjectSpec,
    SceneSpec, Shape, SpecError, TaskType, TimeSpan,
};
pub use script::{
    HistoricalProperty, HistoricalQuery, OpAction, Operation, QuestionMode, ScenarioScript,
    ScriptError, SlideDir, VisibleState,
};
pub use sidecar::{EncoderInfo, SceneDef, Sidecar, TimelineEntry, SIDECAR_SCHEMA_VERSION};
pub use state::{DirNode, Family, StateError, StateSnapshot};

/// Version string stamped into sidecars and manifests for provenance.
pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");
