//! Independent state-transition replay.
//!
//! A second implementation of the operation semantics, including its own
//! inversion logic, so forward/backward replay checks compare two
//! separately written interpreters.

use tempogen_core::{OpAction, Operation, SlideDir, StateSnapshot};

/// Applies one action; None when inapplicable.
pub fn oracle_apply(state: &StateSnapshot, action: &OpAction) -> Option<StateSnapshot> {
    match (state.clone(), action) {
        (StateSnapshot::CardStacks { mut stacks }, OpAction::Push { stack, card }) => {
            let s = stacks.get_mut(*stack)?;
            (s.len() < 8).then(|| s.push(*card))?;
            Some(StateSnapshot::CardStacks { stacks })
        }
        (StateSnapshot::CardStacks { mut stacks }, OpAction::Pop { stack, card }) => {
            let s = stacks.get_mut(*stack)?;
            (s.last() == Some(card)).then(|| s.pop())?;
            Some(StateSnapshot::CardStacks { stacks })
        }
        (StateSnapshot::CardStacks { mut stacks }, OpAction::MoveTop { from, to }) => {
            if from == to || stacks.get(*to)?.len() >= 8 {
                return None;
            }
            let card = stacks.get_mut(*from)?.pop()?;
            stacks.get_mut(*to)?.push(card);
            Some(StateSnapshot::CardStacks { stacks })
        }
        (StateSnapshot::ChipContainers { mut counts }, OpAction::Transfer { count, from, to }) => {
            if from == to || *count == 0 {
                return None;
            }
            let src = *counts.get(*from)?;
            let dst = *counts.get(*to)?;
            if src < *count || dst + count > 12 {
                return None;
            }
            counts[*from] = src - count;
            counts[*to] = dst + count;
            Some(StateSnapshot::ChipContainers { counts })
        }
        (StateSnapshot::FileSystem { root, mut cwd }, OpAction::Enter { dir }) => {
            root.node_at(&cwd)?.child(dir)?;
            cwd.push(dir.clone());
            Some(StateSnapshot::FileSystem { root, cwd })
        }
        (StateSnapshot::FileSystem { root, mut cwd }, OpAction::Leave { dir }) => {
            (cwd.last()? == dir).then(|| cwd.pop())?;
            Some(StateSnapshot::FileSystem { root, cwd })
        }
        (StateSnapshot::FileSystem { mut root, cwd }, OpAction::CreateDir { dir }) => {
            root.node_at_mut(&cwd)?.insert_child(dir).then_some(())?;
            Some(StateSnapshot::FileSystem { root, cwd })
        }
        (StateSnapshot::FileSystem { mut root, cwd }, OpAction::RemoveDir { dir }) => {
            root.node_at_mut(&cwd)?.remove_empty_child(dir).then_some(())?;
            Some(StateSnapshot::FileSystem { root, cwd })
        }
        (StateSnapshot::SymbolRegister { value }, action) => {
            let next = match action {
                OpAction::Add { k } => value.checked_add(*k)?,
                OpAction::Sub { k } => value.checked_sub(*k)?,
                OpAction::Mul { k } => (*k >= 2).then(|| value.checked_mul(*k))??,
                OpAction::Div { k } => {
                    if *k < 2 || value % k != 0 {
                        return None;
                    }
                    value / k
                }
                _ => return None,
            };
            (next.abs() <= 999).then_some(StateSnapshot::SymbolRegister { value: next })
        }
        (StateSnapshot::ShellGame { mut cells }, OpAction::Swap { a, b }) => {
            if a == b || *a >= cells.len() || *b >= cells.len() {
                return None;
            }
            cells.swap(*a, *b);
            Some(StateSnapshot::ShellGame { cells })
        }
        (StateSnapshot::SlidingPuzzle { width, height, mut tiles }, OpAction::Slide { dir }) => {
            let (w, h) = (width as isize, height as isize);
            let blank = tiles.iter().position(|&t| t == 0)? as isize;
            let (dr, dc) = match dir {
                SlideDir::Up => (1isize, 0isize),
                SlideDir::Down => (-1, 0),
                SlideDir::Left => (0, 1),
                SlideDir::Right => (0, -1),
            };
            let (tr, tc) = (blank / w + dr, blank % w + dc);
            if tr < 0 || tr >= h || tc < 0 || tc >= w {
                return None;
            }
            let tile = (tr * w + tc) as usize;
            tiles.swap(blank as usize, tile);
            Some(StateSnapshot::SlidingPuzzle { width, height, tiles })
        }
        _ => None,
    }
}

fn invert_action(action: &OpAction) -> OpAction {
    match action {
        OpAction::Push { stack, card } => OpAction::Pop { stack: *stack, card: *card },
        OpAction::Pop { stack, card } => OpAction::Push { stack: *stack, card: *card },
        OpAction::MoveTop { from, to } => OpAction::MoveTop { from: *to, to: *from },
        OpAction::Transfer { count, from, to } => {
            OpAction::Transfer { count: *count, from: *to, to: *from }
        }
        OpAction::Enter { dir } => OpAction::Leave { dir: dir.clone() },
        OpAction::Leave { dir } => OpAction::Enter { dir: dir.clone() },
        OpAction::CreateDir { dir } => OpAction::RemoveDir { dir: dir.clone() },
        OpAction::RemoveDir { dir } => OpAction::CreateDir { dir: dir.clone() },
        OpAction::Add { k } => OpAction::Sub { k: *k },
        OpAction::Sub { k } => OpAction::Add { k: *k },
        OpAction::Mul { k } => OpAction::Div { k: *k },
        OpAction::Div { k } => OpAction::Mul { k: *k },
        OpAction::Swap { a, b } => OpAction::Swap { a: *a, b: *b },
        OpAction::Slide { dir } => OpAction::Slide { dir: dir.opposite() },
    }
}

/// Folds the operations forward; None if any step is inapplicable.
pub fn oracle_replay_forward(
    initial: &StateSnapshot,
    operations: &[Operation],
) -> Option<StateSnapshot> {
    operations
        .iter()
        .try_fold(initial.clone(), |state, op| oracle_apply(&state, &op.action))
}

/// Replays the inverted operations in reverse from the final state.
pub fn oracle_replay_backward(
    final_state: &StateSnapshot,
    operations: &[Operation],
) -> Option<StateSnapshot> {
    operations
        .iter()
        .rev()
        .try_fold(final_state.clone(), |state, op| {
            oracle_apply(&state, &invert_action(&op.action))
        })
}
