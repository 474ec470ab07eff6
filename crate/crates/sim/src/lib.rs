//! Simulation engines for the tempogen dataset generator.
//!
//! Two halves: `shortterm` simulates continuous 2D motion and derives
//! ground-truth answers for the twelve perceptual task types; `longterm`
//! drives the six state-transition scenario families, including distractor
//! construction and historical queries.

pub mod longterm;
pub mod shortterm;

pub use longterm::{
    answer_historical_query, apply, generate_longterm_sample, generate_script, invert,
    make_distractors, replay_forward, replay_inverse, AnswerTarget, ApplyError, DistractorError,
    LongTermSample, ScriptGenError,
};
pub use shortterm::{
    classify_trajectory, derive_answer, generate_shortterm_sample, simulate, AnswerError,
    ClassifyError, GenError, ObjectTrace, ShortTermSample, SimError, SimulationTrace,
};
