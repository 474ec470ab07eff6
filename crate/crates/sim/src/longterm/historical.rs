//! Historical queries: properties of intermediate states and operations.

use super::transition::{replay_forward, ApplyError};
use tempogen_core::{HistoricalProperty, ScenarioScript};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HistoricalError {
    #[error("op index {op_index} out of range ({what} queries accept {range})")]
    OutOfRange { op_index: usize, what: &'static str, range: String },
    #[error("script does not replay: {0}")]
    Replay(#[from] ApplyError),
}

/// Answers a historical query against the script.
///
/// `State` queries accept indices `0..=T` and return the rendering of the
/// state after the first `op_index` operations (so 0 is the initial state
/// and T the final one). `Operation` queries accept `1..=T` and return the
/// operation's canonical description.
pub fn answer_historical_query(
    script: &ScenarioScript,
    op_index: usize,
    property: HistoricalProperty,
) -> Result<String, HistoricalError> {
    let op_count = script.op_count();
    match property {
        HistoricalProperty::State => {
            if op_index > op_count {
                return Err(HistoricalError::OutOfRange {
                    op_index,
                    what: "state",
                    range: format!("0..={op_count}"),
                });
            }
            let states = replay_forward(&script.initial, &script.operations)?;
            Ok(states[op_index].answer_text())
        }
        HistoricalProperty::Operation => {
            if op_index == 0 || op_index > op_count {
                return Err(HistoricalError::OutOfRange {
                    op_index,
                    what: "operation",
                    range: format!("1..={op_count}"),
                });
            }
            Ok(script.operations[op_index - 1].description())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::longterm::generate::generate_script;
    use tempogen_core::{Family, QuestionMode, StateSnapshot};

    #[test]
    fn index_zero_is_the_initial_state() {
        let script = generate_script(Family::ChipContainers, QuestionMode::ForwardPrediction, 5, 3)
            .unwrap();
        let answer = answer_historical_query(&script, 0, HistoricalProperty::State).unwrap();
        assert_eq!(answer, script.initial.answer_text());
    }

    #[test]
    fn index_t_is_the_final_state() {
        let script = generate_script(Family::ChipContainers, QuestionMode::ForwardPrediction, 5, 3)
            .unwrap();
        let answer = answer_historical_query(&script, 5, HistoricalProperty::State).unwrap();
        assert_eq!(answer, script.final_state.answer_text());
    }

    #[test]
    fn mid_sequence_chip_counts_match_prefix_replay_oracle() {
        for seed in 0..10 {
            let script =
                generate_script(Family::ChipContainers, QuestionMode::ForwardPrediction, 7, seed)
                    .unwrap();
            for idx in 0..=7usize {
                // Independent oracle: fold transfers over plain integers.
                let StateSnapshot::ChipContainers { counts } = &script.initial else {
                    unreachable!()
                };
                let mut counts = counts.clone();
                for op in &script.operations[..idx] {
                    if let tempogen_core::OpAction::Transfer { count, from, to } = &op.action {
                        counts[*from] -= count;
                        counts[*to] += count;
                    }
                }
                let oracle = StateSnapshot::ChipContainers { counts }.answer_text();
                let answer =
                    answer_historical_query(&script, idx, HistoricalProperty::State).unwrap();
                assert_eq!(answer, oracle, "seed {seed} idx {idx}");
            }
        }
    }

    #[test]
    fn out_of_range_indices_error() {
        let script =
            generate_script(Family::ShellGame, QuestionMode::ForwardPrediction, 4, 1).unwrap();
        assert!(answer_historical_query(&script, 5, HistoricalProperty::State).is_err());
        assert!(answer_historical_query(&script, 0, HistoricalProperty::Operation).is_err());
        assert!(answer_historical_query(&script, 4, HistoricalProperty::Operation).is_ok());
    }
}
