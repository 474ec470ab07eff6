//! Scenario script generation.
//!
//! `generate_script` samples an initial state for the family, draws a
//! sequence of applicable operations (never the exact inverse of the one
//! before, which would read as a glitch), and folds them into the final
//! state. `generate_longterm_sample` wraps it with question construction
//! and distractor generation, regenerating with a longer sequence if the
//! answer space turns out too small.

use super::distractor::{make_distractors, AnswerTarget, DistractorError};
use super::historical::answer_historical_query;
use super::transition::{apply, replay_forward};
use rand::seq::SliceRandom;
use rand::Rng;
use tempogen_core::{
    count_word, derive_seed, new_rng, ordinal_word, AnswerValue, ColorName, Difficulty, DirNode,
    Family, GroundTruth, HistoricalProperty, HistoricalQuery, OpAction, Operation, QuestionMode,
    Rng64, ScenarioScript, SlideDir, StateSnapshot, VisibleState,
};
use thiserror::Error;

/// Regeneration attempts before a sample is abandoned.
pub const SCRIPT_RETRY_BOUND: u32 = 20;

const DIR_WORDS: [&str; 12] = [
    "docs", "src", "img", "data", "logs", "music", "work", "tmp", "notes", "media", "old", "pkg",
];

#[derive(Debug, Error)]
pub enum ScriptGenError {
    #[error("operation count must be at least 1")]
    DegenerateScript,
    #[error("family {family:?} and question mode are incompatible: {reason}")]
    Incompatible { family: Family, reason: String },
    #[error("no applicable operation while extending the script (op {op_index})")]
    Stuck { op_index: usize },
    #[error(
        "gave up after {bound} attempts generating {family:?}/{mode:?} from seed {seed}; last failure: {last_error}"
    )]
    RetriesExhausted {
        family: Family,
        mode: QuestionMode,
        seed: u64,
        bound: u32,
        last_error: String,
    },
}

/// A generated scenario with its question payload.
#[derive(Debug, Clone)]
pub struct LongTermSample {
    pub script: ScenarioScript,
    pub truth: GroundTruth,
    pub distractors: Vec<String>,
    pub retries: u32,
}

/// Generates one scenario script deterministically from `seed`.
pub fn generate_script(
    family: Family,
    mode: QuestionMode,
    op_count: usize,
    seed: u64,
) -> Result<ScenarioScript, ScriptGenError> {
    if op_count == 0 {
        return Err(ScriptGenError::DegenerateScript);
    }
    let mut rng = new_rng(seed);
    let initial = sample_initial_state(family, &mut rng);
    let per_op_duration_s = rng.gen_range(0.5..=1.0);

    let mut operations: Vec<Operation> = Vec::with_capacity(op_count);
    let mut state = initial.clone();
    for op_index in 1..=op_count {
        let avoid = operations
            .last()
            .map(|prev| super::transition::invert(prev).action);
        let action = sample_applicable_action(&state, &mut rng, avoid.as_ref())
            .ok_or(ScriptGenError::Stuck { op_index })?;
        let op = Operation { op_index, duration_s: per_op_duration_s, action };
        state = apply(&state, &op).expect("sampled action must be applicable");
        operations.push(op);
    }
    let final_state = state;

    let visible_state = match mode {
        QuestionMode::ForwardPrediction | QuestionMode::HistoricalQuery => VisibleState::InitialOnly,
        QuestionMode::RetrodictiveInference => VisibleState::FinalOnly,
    };
    let historical = match mode {
        QuestionMode::HistoricalQuery => Some(sample_historical_query(op_count, &mut rng)),
        _ => None,
    };

    let script = ScenarioScript {
        seed,
        family,
        initial,
        operations,
        final_state,
        visible_state,
        per_op_duration_s,
        reveal_duration_s: 2.0,
        question_mode: mode,
        historical,
    };
    debug_assert!(script.validate().is_ok());
    Ok(script)
}

fn sample_historical_query(op_count: usize, rng: &mut Rng64) -> HistoricalQuery {
    if rng.gen_bool(0.6) {
        // Interior states are the interesting ones when there's room.
        let op_index = if op_count >= 3 {
            rng.gen_range(1..op_count)
        } else {
            rng.gen_range(1..=op_count)
        };
        HistoricalQuery { op_index, property: HistoricalProperty::State }
    } else {
        HistoricalQuery { op_index: rng.gen_range(1..=op_count), property: HistoricalProperty::Operation }
    }
}

/// Generates the full sample: script, ground truth, and distractors.
pub fn generate_longterm_sample(
    family: Family,
    mode: QuestionMode,
    seed: u64,
    difficulty: Difficulty,
    distractor_count: usize,
) -> Result<LongTermSample, ScriptGenError> {
    let mut rng = new_rng(derive_seed(seed, 0x1717));
    let mut last_error = String::from("no script produced");
    for attempt in 0..SCRIPT_RETRY_BOUND {
        let op_count = match difficulty {
            Difficulty::Standard => rng.gen_range(4..=10usize),
            Difficulty::Hard => rng.gen_range(8..=20usize),
        } + (attempt as usize / 4); // grow the sequence if the space is too small
        let script_seed = derive_seed(seed, attempt as u64);
        let script = match generate_script(family, mode, op_count, script_seed) {
            Ok(s) => s,
            Err(e) => {
                last_error = e.to_string();
                continue;
            }
        };
        match build_question(&script, distractor_count, &mut rng) {
            Ok((truth, distractors)) => {
                return Ok(LongTermSample { script, truth, distractors, retries: attempt })
            }
            Err(e) => {
                last_error = e.to_string();
                continue;
            }
        }
    }
    Err(ScriptGenError::RetriesExhausted {
        family,
        mode,
        seed,
        bound: SCRIPT_RETRY_BOUND,
        last_error,
    })
}

fn build_question(
    script: &ScenarioScript,
    distractor_count: usize,
    rng: &mut Rng64,
) -> Result<(GroundTruth, Vec<String>), DistractorError> {
    let op_count = script.op_count();
    let base_fields = |truth: GroundTruth| {
        truth
            .with_field("op_count_word", count_word(op_count))
            .with_field("family", script.family.slug())
    };

    let (truth, target) = match script.question_mode {
        QuestionMode::ForwardPrediction => (
            base_fields(GroundTruth::new(AnswerValue::StateText(
                script.final_state.answer_text(),
            ))),
            AnswerTarget::State(&script.final_state),
        ),
        QuestionMode::RetrodictiveInference => (
            base_fields(GroundTruth::new(AnswerValue::StateText(script.initial.answer_text()))),
            AnswerTarget::State(&script.initial),
        ),
        QuestionMode::HistoricalQuery => {
            let query = script.historical.expect("validated script has a query");
            let answer = answer_historical_query(script, query.op_index, query.property)
                .expect("validated query is answerable");
            match query.property {
                HistoricalProperty::State => {
                    // Distractors perturb the true intermediate state.
                    let states = replay_forward(&script.initial, &script.operations)
                        .expect("script replays");
                    let state = states[query.op_index].clone();
                    let truth = base_fields(GroundTruth::new(AnswerValue::StateText(answer)))
                        .with_field("op_ordinal", ordinal_word(query.op_index));
                    let distractors = make_distractors(
                        AnswerTarget::State(&state),
                        script,
                        distractor_count,
                        rng,
                    )?;
                    return Ok((truth, distractors));
                }
                HistoricalProperty::Operation => {
                    let op = &script.operations[query.op_index - 1];
                    let truth = base_fields(GroundTruth::new(AnswerValue::OpText(answer)))
                        .with_field("op_ordinal", ordinal_word(query.op_index));
                    let states = replay_forward(&script.initial, &script.operations)
                        .expect("script replays");
                    let distractors = make_distractors(
                        AnswerTarget::Operation { op, context: &states[query.op_index - 1] },
                        script,
                        distractor_count,
                        rng,
                    )?;
                    return Ok((truth, distractors));
                }
            }
        }
    };
    let distractors = make_distractors(target, script, distractor_count, rng)?;
    Ok((truth, distractors))
}

/// Samples a fresh, structurally valid initial state.
pub fn sample_initial_state(family: Family, rng: &mut Rng64) -> StateSnapshot {
    match family {
        Family::CardStacks => {
            let stacks = (0..rng.gen_range(2..=3))
                .map(|_| {
                    (0..rng.gen_range(2..=5))
                        .map(|_| rng.gen_range(1..=9u8))
                        .collect()
                })
                .collect();
            StateSnapshot::CardStacks { stacks }
        }
        Family::ChipContainers => {
            let counts = (0..3).map(|_| rng.gen_range(2..=6u32)).collect();
            StateSnapshot::ChipContainers { counts }
        }
        Family::FileSystem => {
            let mut names: Vec<&str> = DIR_WORDS.to_vec();
            names.shuffle(rng);
            let mut root = DirNode::new("/");
            let top = rng.gen_range(2..=3usize);
            let mut used = 0;
            for _ in 0..top {
                root.insert_child(names[used]);
                used += 1;
            }
            // Give some top-level directories a child of their own.
            let top_names: Vec<String> = root.children.iter().map(|c| c.name.clone()).collect();
            for name in &top_names {
                if rng.gen_bool(0.5) && used < names.len() {
                    root.node_at_mut(&[name.clone()]).unwrap().insert_child(names[used]);
                    used += 1;
                }
            }
            StateSnapshot::FileSystem { root, cwd: vec![] }
        }
        Family::SymbolRegister => StateSnapshot::SymbolRegister { value: rng.gen_range(2..=20) },
        Family::ShellGame => {
            let mut colors = ColorName::ALL.to_vec();
            colors.shuffle(rng);
            colors.truncate(rng.gen_range(3..=4));
            StateSnapshot::ShellGame { cells: colors }
        }
        Family::SlidingPuzzle => {
            let mut tiles: Vec<u8> = (0..9).collect();
            tiles.shuffle(rng);
            StateSnapshot::SlidingPuzzle { width: 3, height: 3, tiles }
        }
    }
}

/// Samples an action applicable to `state`, skipping `avoid` (normally the
/// inverse of the previous op). Returns None only for states with no legal
/// move, which the family samplers never produce.
pub fn sample_applicable_action(
    state: &StateSnapshot,
    rng: &mut Rng64,
    avoid: Option<&OpAction>,
) -> Option<OpAction> {
    let mut candidates: Vec<OpAction> = Vec::new();
    match state {
        StateSnapshot::CardStacks { stacks } => {
            for (idx, stack) in stacks.iter().enumerate() {
                if stack.len() < tempogen_core::state::MAX_STACK_HEIGHT {
                    candidates.push(OpAction::Push { stack: idx, card: rng.gen_range(1..=9) });
                }
                if let Some(&top) = stack.last() {
                    candidates.push(OpAction::Pop { stack: idx, card: top });
                }
            }
            for from in 0..stacks.len() {
                for to in 0..stacks.len() {
                    if from != to
                        && !stacks[from].is_empty()
                        && stacks[to].len() < tempogen_core::state::MAX_STACK_HEIGHT
                    {
                        candidates.push(OpAction::MoveTop { from, to });
                    }
                }
            }
        }
        StateSnapshot::ChipContainers { counts } => {
            for from in 0..counts.len() {
                for to in 0..counts.len() {
                    if from == to || counts[from] == 0 {
                        continue;
                    }
                    let headroom = tempogen_core::state::MAX_CHIPS - counts[to];
                    let max = counts[from].min(4).min(headroom);
                    if max >= 1 {
                        candidates.push(OpAction::Transfer {
                            count: rng.gen_range(1..=max),
                            from,
                            to,
                        });
                    }
                }
            }
        }
        StateSnapshot::FileSystem { root, cwd } => {
            let node = root.node_at(cwd)?;
            for child in &node.children {
                candidates.push(OpAction::Enter { dir: child.name.clone() });
            }
            if let Some(tail) = cwd.last() {
                candidates.push(OpAction::Leave { dir: tail.clone() });
            }
            if node.children.len() < 4 {
                let fresh: Vec<&str> = DIR_WORDS
                    .iter()
                    .copied()
                    .filter(|w| node.child(w).is_none())
                    .collect();
                if let Some(name) = fresh.choose(rng) {
                    candidates.push(OpAction::CreateDir { dir: name.to_string() });
                }
            }
        }
        StateSnapshot::SymbolRegister { value } => {
            let max = tempogen_core::state::MAX_REGISTER;
            let add = rng.gen_range(1..=9i64);
            if (value + add).abs() <= max {
                candidates.push(OpAction::Add { k: add });
            }
            let sub = rng.gen_range(1..=9i64);
            if (value - sub).abs() <= max {
                candidates.push(OpAction::Sub { k: sub });
            }
            let mul = rng.gen_range(2..=3i64);
            if (value * mul).abs() <= max && *value != 0 {
                candidates.push(OpAction::Mul { k: mul });
            }
            let div = rng.gen_range(2..=3i64);
            if *value != 0 && value % div == 0 {
                candidates.push(OpAction::Div { k: div });
            }
        }
        StateSnapshot::ShellGame { cells } => {
            for a in 0..cells.len() {
                for b in a + 1..cells.len() {
                    candidates.push(OpAction::Swap { a, b });
                }
            }
        }
        StateSnapshot::SlidingPuzzle { .. } => {
            for dir in SlideDir::ALL {
                let probe = Operation { op_index: 1, duration_s: 0.5, action: OpAction::Slide { dir } };
                if apply(state, &probe).is_ok() {
                    candidates.push(OpAction::Slide { dir });
                }
            }
        }
    }
    if let Some(avoid) = avoid {
        if candidates.len() > 1 {
            candidates.retain(|c| c != avoid);
        }
    }
    candidates.choose(rng).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::longterm::transition::{replay_forward, replay_inverse};

    #[test]
    fn zero_ops_rejected() {
        assert!(matches!(
            generate_script(Family::ShellGame, QuestionMode::ForwardPrediction, 0, 1),
            Err(ScriptGenError::DegenerateScript)
        ));
    }

    #[test]
    fn scripts_replay_to_their_final_state() {
        for family in Family::ALL {
            for seed in 0..20 {
                let script =
                    generate_script(family, QuestionMode::ForwardPrediction, 6, seed).unwrap();
                let states = replay_forward(&script.initial, &script.operations).unwrap();
                assert_eq!(states.last().unwrap(), &script.final_state, "{family:?} seed {seed}");
                let back = replay_inverse(&script.final_state, &script.operations).unwrap();
                assert_eq!(back, script.initial, "{family:?} seed {seed} retrodiction");
            }
        }
    }

    #[test]
    fn visibility_follows_question_mode() {
        let fwd = generate_script(Family::ShellGame, QuestionMode::ForwardPrediction, 4, 7).unwrap();
        assert_eq!(fwd.visible_state, VisibleState::InitialOnly);
        let retro =
            generate_script(Family::ShellGame, QuestionMode::RetrodictiveInference, 4, 7).unwrap();
        assert_eq!(retro.visible_state, VisibleState::FinalOnly);
        let hist = generate_script(Family::ShellGame, QuestionMode::HistoricalQuery, 4, 7).unwrap();
        assert!(hist.historical.is_some());
    }

    #[test]
    fn sample_includes_distinct_distractors() {
        for family in Family::ALL {
            for mode in QuestionMode::ALL {
                let sample =
                    generate_longterm_sample(family, mode, 42, Difficulty::Standard, 3).unwrap();
                assert_eq!(sample.distractors.len(), 3, "{family:?}/{mode:?}");
                let answer = sample.truth.answer_text();
                let mut all = sample.distractors.clone();
                all.push(answer);
                let set: std::collections::BTreeSet<&String> = all.iter().collect();
                assert_eq!(set.len(), 4, "{family:?}/{mode:?} distractors collide");
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_longterm_sample(
            Family::SlidingPuzzle,
            QuestionMode::RetrodictiveInference,
            9,
            Difficulty::Standard,
            3,
        )
        .unwrap();
        let b = generate_longterm_sample(
            Family::SlidingPuzzle,
            QuestionMode::RetrodictiveInference,
            9,
            Difficulty::Standard,
            3,
        )
        .unwrap();
        assert_eq!(a.script, b.script);
        assert_eq!(a.distractors, b.distractors);
    }

    #[test]
    fn hard_profile_lengthens_sequences() {
        let hard = generate_longterm_sample(
            Family::ShellGame,
            QuestionMode::ForwardPrediction,
            3,
            Difficulty::Hard,
            3,
        )
        .unwrap();
        assert!(hard.script.op_count() >= 8);
    }
}
