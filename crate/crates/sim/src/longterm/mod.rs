//! Long-term scenarios: state transitions, script generation, distractors,
//! and historical queries for the six families.

mod distractor;
mod generate;
mod historical;
mod transition;

pub use distractor::{make_distractors, AnswerTarget, DistractorError};
pub use generate::{
    generate_longterm_sample, generate_script, sample_applicable_action, LongTermSample,
    ScriptGenError, SCRIPT_RETRY_BOUND,
};
pub use historical::{answer_historical_query, HistoricalError};
pub use transition::{apply, invert, replay_forward, replay_inverse, ApplyError};
