//! Rendering and export: deterministic frame planning, software
//! rasterization, video encoding via an external encoder subprocess, and
//! dataset file IO (sidecars, manifests).

pub mod export;
pub mod font;
pub mod plan;
pub mod raster;

pub use export::{
    encode_video, probe_video, read_manifest, write_image_sequence, write_manifest,
    write_metadata, EncodeSettings, ExportError, ProbeInfo, VideoSink,
};
pub use plan::{
    longterm_events, phase_schedule, plan_longterm, plan_shortterm, DrawCmd, DrawTag, FramePlan,
    Phase, PhaseSchedule, PlanError, PlannedFrame, RenderConfig,
};
pub use raster::{rasterize, rasterize_frame, RasterError};
