//! Distractor construction for multiple-choice questions.
//!
//! State distractors perturb the correct state with one or two random
//! applicable operations and keep the result when its rendered answer
//! differs from the truth (a perturbation that cancels out is redrawn).
//! Operation distractors are alternative actions applicable at the same
//! point in the sequence.

use super::generate::sample_applicable_action;
use super::transition::apply;
use rand::Rng;
use tempogen_core::{Operation, Rng64, ScenarioScript, StateSnapshot};
use thiserror::Error;

/// Redraw attempts per requested distractor before giving up.
const DRAW_BOUND: usize = 80;

#[derive(Debug, Error)]
pub enum DistractorError {
    #[error("answer space too small: produced {produced} of {requested} distinct distractors")]
    SpaceTooSmall { requested: usize, produced: usize },
    #[error("distractor count must be at least 1")]
    ZeroRequested,
}

/// What the question asks for — a state's rendering or an operation.
#[derive(Debug, Clone, Copy)]
pub enum AnswerTarget<'a> {
    State(&'a StateSnapshot),
    Operation { op: &'a Operation, context: &'a StateSnapshot },
}

/// Produces `k` pairwise-distinct distractor texts, none equal to the
/// correct answer's rendering.
pub fn make_distractors(
    correct: AnswerTarget<'_>,
    _script: &ScenarioScript,
    k: usize,
    rng: &mut Rng64,
) -> Result<Vec<String>, DistractorError> {
    if k == 0 {
        return Err(DistractorError::ZeroRequested);
    }
    let mut out: Vec<String> = Vec::with_capacity(k);
    let correct_text = match correct {
        AnswerTarget::State(s) => s.answer_text(),
        AnswerTarget::Operation { op, .. } => op.description(),
    };

    let mut attempts = 0;
    while out.len() < k && attempts < DRAW_BOUND * k {
        attempts += 1;
        let candidate = match correct {
            AnswerTarget::State(state) => perturb_state(state, rng).map(|s| s.answer_text()),
            AnswerTarget::Operation { context, .. } => {
                sample_applicable_action(context, rng, None).map(|a| a.description())
            }
        };
        let Some(text) = candidate else { continue };
        if text != correct_text && !out.contains(&text) {
            out.push(text);
        }
    }
    if out.len() < k {
        return Err(DistractorError::SpaceTooSmall { requested: k, produced: out.len() });
    }
    Ok(out)
}

/// Applies one or two random applicable operations to a copy of `state`.
fn perturb_state(state: &StateSnapshot, rng: &mut Rng64) -> Option<StateSnapshot> {
    let steps = if rng.gen_bool(0.5) { 1 } else { 2 };
    let mut current = state.clone();
    for _ in 0..steps {
        let action = sample_applicable_action(&current, rng, None)?;
        let op = Operation { op_index: 1, duration_s: 0.5, action };
        current = apply(&current, &op).ok()?;
    }
    Some(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempogen_core::{
        new_rng, ColorName, Family, OpAction, QuestionMode, ScenarioScript, VisibleState,
    };

    fn dummy_script(initial: StateSnapshot, final_state: StateSnapshot) -> ScenarioScript {
        let family = initial.family();
        ScenarioScript {
            seed: 0,
            family,
            initial,
            operations: vec![Operation {
                op_index: 1,
                duration_s: 0.6,
                action: OpAction::Swap { a: 0, b: 1 },
            }],
            final_state,
            visible_state: VisibleState::InitialOnly,
            per_op_duration_s: 0.6,
            reveal_duration_s: 2.0,
            question_mode: QuestionMode::ForwardPrediction,
            historical: None,
        }
    }

    #[test]
    fn shell_game_distractors_are_distinct_permutations() {
        // Enumerate all 6 permutations of three cups by requesting more
        // distractors than exist minus the correct one.
        let correct = StateSnapshot::ShellGame {
            cells: vec![ColorName::Blue, ColorName::Red, ColorName::Green],
        };
        let script = dummy_script(correct.clone(), correct.clone());
        let mut rng = new_rng(1);
        let distractors =
            make_distractors(AnswerTarget::State(&correct), &script, 3, &mut rng).unwrap();
        assert_eq!(distractors.len(), 3);
        let correct_text = correct.answer_text();
        for d in &distractors {
            assert_ne!(*d, correct_text);
        }
        let set: std::collections::BTreeSet<&String> = distractors.iter().collect();
        assert_eq!(set.len(), 3);
        // Requesting all five alternatives also works…
        let five = make_distractors(AnswerTarget::State(&correct), &script, 5, &mut rng).unwrap();
        assert_eq!(five.len(), 5);
        // …but a sixth distinct permutation does not exist.
        assert!(matches!(
            make_distractors(AnswerTarget::State(&correct), &script, 6, &mut rng),
            Err(DistractorError::SpaceTooSmall { .. })
        ));
    }

    #[test]
    fn two_state_space_forces_the_other_state() {
        let correct = StateSnapshot::ChipContainers { counts: vec![1, 0] };
        let script = dummy_script(correct.clone(), correct.clone());
        let mut rng = new_rng(2);
        let d = make_distractors(AnswerTarget::State(&correct), &script, 1, &mut rng).unwrap();
        assert_eq!(d, vec!["A=0, B=1".to_string()]);
    }
}
