//! Short-term motion: simulation, trajectory classification, ground-truth
//! derivation, and per-task scene generation.

mod classify;
mod derive;
mod generate;
mod simulate;
mod trace;

pub use classify::{classify_trajectory, ClassifyError};
pub use derive::{derive_answer, AnswerError};
pub use generate::{generate_shortterm_sample, GenError, ShortTermSample, RETRY_BOUND};
pub use simulate::{simulate, SimError};
pub use trace::{GlyphStyle, ObjectTrace, SimulationTrace};
