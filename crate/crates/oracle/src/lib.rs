//! Independent brute-force oracles.
//!
//! Everything here re-derives expected values straight from the shared
//! domain types, deliberately *not* sharing code with the engines under
//! test: plain loops, direct counters, no event log, no trace machinery.
//! Test suites compare engine output against these.

pub mod metrics;
pub mod replay;
pub mod shortterm;

pub use metrics::reference_grounding_report;
pub use replay::{oracle_apply, oracle_replay_backward, oracle_replay_forward};
pub use shortterm::oracle_shortterm_answer;
