//! Long-term scenario scripts: operations over state snapshots.
//!
//! A [`ScenarioScript`] records the initial state, the operation sequence,
//! and the final state it provably reaches. Every action is invertible, so
//! scripts support forward prediction, retrodictive inference, and
//! historical queries with exact answers.

use crate::state::{container_letter, Family, StateSnapshot};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Direction a puzzle tile moves (the blank moves the opposite way).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlideDir {
    Up,
    Down,
    Left,
    Right,
}

impl SlideDir {
    pub const ALL: [SlideDir; 4] =
        [SlideDir::Up, SlideDir::Down, SlideDir::Left, SlideDir::Right];

    pub fn opposite(self) -> SlideDir {
        match self {
            SlideDir::Up => SlideDir::Down,
            SlideDir::Down => SlideDir::Up,
            SlideDir::Left => SlideDir::Right,
            SlideDir::Right => SlideDir::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SlideDir::Up => "up",
            SlideDir::Down => "down",
            SlideDir::Left => "left",
            SlideDir::Right => "right",
        }
    }
}

/// Family-specific state-changing action.
///
/// `Pop` carries the value it removes and `Leave` the directory it exits so
/// that every action's inverse is itself a representable action; `apply`
/// checks the carried value against the state. `RemoveDir` never appears in
/// generated scripts — it exists as the inverse of `CreateDir`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OpAction {
    // card stacks
    Push { stack: usize, card: u8 },
    Pop { stack: usize, card: u8 },
    MoveTop { from: usize, to: usize },
    // chip containers
    Transfer { count: u32, from: usize, to: usize },
    // file system
    Enter { dir: String },
    Leave { dir: String },
    CreateDir { dir: String },
    RemoveDir { dir: String },
    // symbol register
    Add { k: i64 },
    Sub { k: i64 },
    Mul { k: i64 },
    Div { k: i64 },
    // shell game
    Swap { a: usize, b: usize },
    // sliding puzzle
    Slide { dir: SlideDir },
}

impl OpAction {
    pub fn family(&self) -> Family {
        match self {
            OpAction::Push { .. } | OpAction::Pop { .. } | OpAction::MoveTop { .. } => {
                Family::CardStacks
            }
            OpAction::Transfer { .. } => Family::ChipContainers,
            OpAction::Enter { .. }
            | OpAction::Leave { .. }
            | OpAction::CreateDir { .. }
            | OpAction::RemoveDir { .. } => Family::FileSystem,
            OpAction::Add { .. } | OpAction::Sub { .. } | OpAction::Mul { .. } | OpAction::Div { .. } => {
                Family::SymbolRegister
            }
            OpAction::Swap { .. } => Family::ShellGame,
            OpAction::Slide { .. } => Family::SlidingPuzzle,
        }
    }

    /// Canonical description shown as the on-screen caption and used as the
    /// answer text of operation queries. Hides card identities (the viewer
    /// sees face-down cards), states everything else.
    pub fn description(&self) -> String {
        match self {
            OpAction::Push { stack, .. } => format!("add a card to stack {}", stack + 1),
            OpAction::Pop { stack, .. } => format!("remove the top card of stack {}", stack + 1),
            OpAction::MoveTop { from, to } => {
                format!("move the top card of stack {} to stack {}", from + 1, to + 1)
            }
            OpAction::Transfer { count, from, to } => format!(
                "move {} chip{} from {} to {}",
                count,
                if *count == 1 { "" } else { "s" },
                container_letter(*from),
                container_letter(*to)
            ),
            OpAction::Enter { dir } => format!("enter {dir}"),
            OpAction::Leave { dir } => format!("leave {dir}"),
            OpAction::CreateDir { dir } => format!("create {dir}"),
            OpAction::RemoveDir { dir } => format!("remove {dir}"),
            OpAction::Add { k } => format!("add {k}"),
            OpAction::Sub { k } => format!("subtract {k}"),
            OpAction::Mul { k } => format!("multiply by {k}"),
            OpAction::Div { k } => format!("divide by {k}"),
            OpAction::Swap { a, b } => format!("swap cup {} and cup {}", a + 1, b + 1),
            OpAction::Slide { dir } => format!("slide a tile {}", dir.name()),
        }
    }
}

/// One scripted operation: the action plus its position and animation length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Operation {
    /// 1-based position in the sequence.
    pub op_index: usize,
    /// Animation length, seconds; always within [0.5, 1.0].
    pub duration_s: f64,
    pub action: OpAction,
}

impl Operation {
    pub fn description(&self) -> String {
        self.action.description()
    }
}

/// Which endpoint state the video reveals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VisibleState {
    InitialOnly,
    FinalOnly,
}

/// Reasoning mode the question targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuestionMode {
    ForwardPrediction,
    RetrodictiveInference,
    HistoricalQuery,
}

impl QuestionMode {
    pub const ALL: [QuestionMode; 3] = [
        QuestionMode::ForwardPrediction,
        QuestionMode::RetrodictiveInference,
        QuestionMode::HistoricalQuery,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            QuestionMode::ForwardPrediction => "forward_prediction",
            QuestionMode::RetrodictiveInference => "retrodictive_inference",
            QuestionMode::HistoricalQuery => "historical_query",
        }
    }
}

/// What a historical query asks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HistoricalProperty {
    /// The state after the first `op_index` operations.
    State,
    /// The operation at position `op_index`.
    Operation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoricalQuery {
    pub op_index: usize,
    pub property: HistoricalProperty,
}

/// A complete long-term scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioScript {
    pub seed: u64,
    pub family: Family,
    pub initial: StateSnapshot,
    pub operations: Vec<Operation>,
    #[serde(rename = "final")]
    pub final_state: StateSnapshot,
    pub visible_state: VisibleState,
    /// Drawn once per script; every operation animates for this long.
    pub per_op_duration_s: f64,
    pub reveal_duration_s: f64,
    pub question_mode: QuestionMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub historical: Option<HistoricalQuery>,
}

impl ScenarioScript {
    pub fn op_count(&self) -> usize {
        self.operations.len()
    }

    /// Structural checks that don't replay operations (replay soundness is
    /// the simulator's job; `validate_against` below runs it when given an
    /// `apply` function).
    pub fn validate(&self) -> Result<(), ScriptError> {
        if self.operations.is_empty() {
            return Err(ScriptError::NoOperations);
        }
        self.initial.validate().map_err(ScriptError::BadInitial)?;
        self.final_state.validate().map_err(ScriptError::BadFinal)?;
        if self.initial.family() != self.family || self.final_state.family() != self.family {
            return Err(ScriptError::FamilyMismatch);
        }
        for (i, op) in self.operations.iter().enumerate() {
            if op.op_index != i + 1 {
                return Err(ScriptError::BadOpIndex { expected: i + 1, found: op.op_index });
            }
            if op.action.family() != self.family {
                return Err(ScriptError::FamilyMismatch);
            }
            if !(0.5..=1.0).contains(&op.duration_s) {
                return Err(ScriptError::OpDurationOutOfRange(op.duration_s));
            }
        }
        if !(0.5..=1.0).contains(&self.per_op_duration_s) {
            return Err(ScriptError::OpDurationOutOfRange(self.per_op_duration_s));
        }
        if self.reveal_duration_s <= 0.0 {
            return Err(ScriptError::NonPositiveReveal);
        }
        if self.visible_state == VisibleState::FinalOnly
            && self.question_mode == QuestionMode::ForwardPrediction
        {
            return Err(ScriptError::HiddenFinalForForward);
        }
        match (self.question_mode, &self.historical) {
            (QuestionMode::HistoricalQuery, None) => Err(ScriptError::MissingHistoricalQuery),
            (QuestionMode::HistoricalQuery, Some(q)) => {
                let max = self.op_count();
                let ok = match q.property {
                    HistoricalProperty::State => q.op_index <= max,
                    HistoricalProperty::Operation => (1..=max).contains(&q.op_index),
                };
                if ok {
                    Ok(())
                } else {
                    Err(ScriptError::HistoricalIndexOutOfRange { op_index: q.op_index, max })
                }
            }
            (_, Some(_)) => Err(ScriptError::UnexpectedHistoricalQuery),
            (_, None) => Ok(()),
        }
    }
}

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("script has no operations (no temporal content)")]
    NoOperations,
    #[error("invalid initial state: {0}")]
    BadInitial(crate::state::StateError),
    #[error("invalid final state: {0}")]
    BadFinal(crate::state::StateError),
    #[error("state or operation family does not match the script family")]
    FamilyMismatch,
    #[error("operation index {found} out of sequence (expected {expected})")]
    BadOpIndex { expected: usize, found: usize },
    #[error("operation duration {0} outside [0.5, 1.0]")]
    OpDurationOutOfRange(f64),
    #[error("reveal duration must be positive")]
    NonPositiveReveal,
    #[error("forward prediction requires the initial state to be visible")]
    HiddenFinalForForward,
    #[error("historical query mode without a recorded query")]
    MissingHistoricalQuery,
    #[error("historical query present for a non-historical mode")]
    UnexpectedHistoricalQuery,
    #[error("historical query index {op_index} out of range (0..={max})")]
    HistoricalIndexOutOfRange { op_index: usize, max: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::palette::ColorName;

    fn shell_script() -> ScenarioScript {
        ScenarioScript {
            seed: 9,
            family: Family::ShellGame,
            initial: StateSnapshot::ShellGame {
                cells: vec![ColorName::Red, ColorName::Blue, ColorName::Green],
            },
            operations: vec![Operation {
                op_index: 1,
                duration_s: 0.6,
                action: OpAction::Swap { a: 0, b: 1 },
            }],
            final_state: StateSnapshot::ShellGame {
                cells: vec![ColorName::Blue, ColorName::Red, ColorName::Green],
            },
            visible_state: VisibleState::InitialOnly,
            per_op_duration_s: 0.6,
            reveal_duration_s: 2.0,
            question_mode: QuestionMode::ForwardPrediction,
            historical: None,
        }
    }

    #[test]
    fn valid_script_passes() {
        shell_script().validate().unwrap();
    }

    #[test]
    fn forward_mode_requires_visible_initial() {
        let mut s = shell_script();
        s.visible_state = VisibleState::FinalOnly;
        assert!(matches!(s.validate(), Err(ScriptError::HiddenFinalForForward)));
    }

    #[test]
    fn empty_operation_list_rejected() {
        let mut s = shell_script();
        s.operations.clear();
        assert!(matches!(s.validate(), Err(ScriptError::NoOperations)));
    }

    #[test]
    fn descriptions_read_naturally() {
        assert_eq!(
            OpAction::Transfer { count: 4, from: 0, to: 1 }.description(),
            "move 4 chips from A to B"
        );
        assert_eq!(OpAction::Swap { a: 0, b: 2 }.description(), "swap cup 1 and cup 3");
        assert_eq!(OpAction::Pop { stack: 0, card: 7 }.description(), "remove the top card of stack 1");
    }
}
