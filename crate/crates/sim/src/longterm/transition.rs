//! State transitions: `apply`, `invert`, and replay helpers.
//!
//! `apply` has value semantics — the input state is untouched and the
//! successor is returned. Every action is invertible:
//! `apply(apply(s, op), invert(op)) == s` for every state the action is
//! applicable to.

use tempogen_core::state::{MAX_CHIPS, MAX_REGISTER, MAX_STACK_HEIGHT};
use tempogen_core::{OpAction, Operation, SlideDir, StateSnapshot};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ApplyError {
    #[error("op {op_index}: action family does not match the state")]
    FamilyMismatch { op_index: usize },
    #[error("op {op_index}: {reason}")]
    Inapplicable { op_index: usize, reason: String },
}

fn fail(op_index: usize, reason: impl Into<String>) -> ApplyError {
    ApplyError::Inapplicable { op_index, reason: reason.into() }
}

/// Applies one operation, returning the successor state.
pub fn apply(state: &StateSnapshot, op: &Operation) -> Result<StateSnapshot, ApplyError> {
    let i = op.op_index;
    match (state, &op.action) {
        (StateSnapshot::CardStacks { stacks }, action) => {
            let mut stacks = stacks.clone();
            match action {
                OpAction::Push { stack, card } => {
                    let s = stacks
                        .get_mut(*stack)
                        .ok_or_else(|| fail(i, format!("no stack {}", stack + 1)))?;
                    if s.len() >= MAX_STACK_HEIGHT {
                        return Err(fail(i, format!("stack {} is full", stack + 1)));
                    }
                    s.push(*card);
                }
                OpAction::Pop { stack, card } => {
                    let s = stacks
                        .get_mut(*stack)
                        .ok_or_else(|| fail(i, format!("no stack {}", stack + 1)))?;
                    match s.last() {
                        Some(top) if top == card => {
                            s.pop();
                        }
                        Some(top) => {
                            return Err(fail(
                                i,
                                format!("stack {} top is {top}, expected {card}", stack + 1),
                            ))
                        }
                        None => return Err(fail(i, format!("stack {} is empty", stack + 1))),
                    }
                }
                OpAction::MoveTop { from, to } => {
                    if from == to {
                        return Err(fail(i, "move with identical stacks"));
                    }
                    if stacks.get(*to).map(|s| s.len()) >= Some(MAX_STACK_HEIGHT) {
                        return Err(fail(i, format!("stack {} is full", to + 1)));
                    }
                    let card = stacks
                        .get_mut(*from)
                        .ok_or_else(|| fail(i, format!("no stack {}", from + 1)))?
                        .pop()
                        .ok_or_else(|| fail(i, format!("stack {} is empty", from + 1)))?;
                    stacks
                        .get_mut(*to)
                        .ok_or_else(|| fail(i, format!("no stack {}", to + 1)))?
                        .push(card);
                }
                _ => return Err(ApplyError::FamilyMismatch { op_index: i }),
            }
            Ok(StateSnapshot::CardStacks { stacks })
        }
        (StateSnapshot::ChipContainers { counts }, OpAction::Transfer { count, from, to }) => {
            let mut counts = counts.clone();
            if from == to {
                return Err(fail(i, "transfer with identical containers"));
            }
            if *count == 0 {
                return Err(fail(i, "transfer of zero chips"));
            }
            let have = *counts
                .get(*from)
                .ok_or_else(|| fail(i, "no such source container"))?;
            if have < *count {
                return Err(fail(
                    i,
                    format!("insufficient chips: container has {have}, transfer wants {count}"),
                ));
            }
            let dest = *counts
                .get(*to)
                .ok_or_else(|| fail(i, "no such destination container"))?;
            if dest + count > MAX_CHIPS {
                return Err(fail(i, "destination container would overflow"));
            }
            counts[*from] -= count;
            counts[*to] += count;
            Ok(StateSnapshot::ChipContainers { counts })
        }
        (StateSnapshot::FileSystem { root, cwd }, action) => {
            let mut root = root.clone();
            let mut cwd = cwd.clone();
            match action {
                OpAction::Enter { dir } => {
                    let node = root.node_at(&cwd).ok_or_else(|| fail(i, "cwd vanished"))?;
                    if node.child(dir).is_none() {
                        return Err(fail(i, format!("no directory {dir} here")));
                    }
                    cwd.push(dir.clone());
                }
                OpAction::Leave { dir } => {
                    if cwd.last().map(String::as_str) != Some(dir.as_str()) {
                        return Err(fail(i, format!("not inside {dir}")));
                    }
                    cwd.pop();
                }
                OpAction::CreateDir { dir } => {
                    let node = root
                        .node_at_mut(&cwd)
                        .ok_or_else(|| fail(i, "cwd vanished"))?;
                    if !node.insert_child(dir) {
                        return Err(fail(i, format!("directory {dir} already exists")));
                    }
                }
                OpAction::RemoveDir { dir } => {
                    let node = root
                        .node_at_mut(&cwd)
                        .ok_or_else(|| fail(i, "cwd vanished"))?;
                    if !node.remove_empty_child(dir) {
                        return Err(fail(i, format!("directory {dir} missing or not empty")));
                    }
                }
                _ => return Err(ApplyError::FamilyMismatch { op_index: i }),
            }
            Ok(StateSnapshot::FileSystem { root, cwd })
        }
        (StateSnapshot::SymbolRegister { value }, action) => {
            let next = match action {
                OpAction::Add { k } => value + k,
                OpAction::Sub { k } => value - k,
                OpAction::Mul { k } => {
                    if *k < 2 {
                        return Err(fail(i, "multiplier must be at least 2"));
                    }
                    value * k
                }
                OpAction::Div { k } => {
                    if *k < 2 {
                        return Err(fail(i, "divisor must be at least 2"));
                    }
                    if value % k != 0 {
                        return Err(fail(i, format!("{value} is not divisible by {k}")));
                    }
                    value / k
                }
                _ => return Err(ApplyError::FamilyMismatch { op_index: i }),
            };
            if next.abs() > MAX_REGISTER {
                return Err(fail(i, format!("register value {next} out of range")));
            }
            Ok(StateSnapshot::SymbolRegister { value: next })
        }
        (StateSnapshot::ShellGame { cells }, OpAction::Swap { a, b }) => {
            if a == b {
                return Err(fail(i, "swap with identical cups"));
            }
            let mut cells = cells.clone();
            if *a >= cells.len() || *b >= cells.len() {
                return Err(fail(i, "swap cup out of range"));
            }
            cells.swap(*a, *b);
            Ok(StateSnapshot::ShellGame { cells })
        }
        (StateSnapshot::SlidingPuzzle { width, height, tiles }, OpAction::Slide { dir }) => {
            let (w, h) = (*width as isize, *height as isize);
            let blank = tiles
                .iter()
                .position(|&t| t == 0)
                .ok_or_else(|| fail(i, "puzzle has no blank"))? as isize;
            let (br, bc) = (blank / w, blank % w);
            // The tile moves `dir`, so it starts on the opposite side of
            // the blank.
            let (dr, dc) = match dir {
                SlideDir::Up => (1, 0),
                SlideDir::Down => (-1, 0),
                SlideDir::Left => (0, 1),
                SlideDir::Right => (0, -1),
            };
            let (tr, tc) = (br + dr, bc + dc);
            if tr < 0 || tr >= h || tc < 0 || tc >= w {
                return Err(fail(i, format!("no tile can slide {}", dir.name())));
            }
            let tile_idx = (tr * w + tc) as usize;
            let mut tiles = tiles.clone();
            tiles.swap(blank as usize, tile_idx);
            Ok(StateSnapshot::SlidingPuzzle { width: *width, height: *height, tiles })
        }
        _ => Err(ApplyError::FamilyMismatch { op_index: i }),
    }
}

/// The inverse action; op index and duration are kept.
pub fn invert(op: &Operation) -> Operation {
    let action = match &op.action {
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
    };
    Operation { op_index: op.op_index, duration_s: op.duration_s, action }
}

/// All intermediate states S₀..S_T of a forward replay.
pub fn replay_forward(
    initial: &StateSnapshot,
    operations: &[Operation],
) -> Result<Vec<StateSnapshot>, ApplyError> {
    let mut states = Vec::with_capacity(operations.len() + 1);
    states.push(initial.clone());
    for op in operations {
        let next = apply(states.last().unwrap(), op)?;
        states.push(next);
    }
    Ok(states)
}

/// Replays the inverted sequence backward from the final state; returns
/// the reconstructed initial state.
pub fn replay_inverse(
    final_state: &StateSnapshot,
    operations: &[Operation],
) -> Result<StateSnapshot, ApplyError> {
    let mut state = final_state.clone();
    for op in operations.iter().rev() {
        state = apply(&state, &invert(op))?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempogen_core::ColorName;

    fn op(action: OpAction) -> Operation {
        Operation { op_index: 1, duration_s: 0.6, action }
    }

    #[test]
    fn swap_is_a_transposition() {
        let state = StateSnapshot::ShellGame {
            cells: vec![ColorName::Red, ColorName::Blue, ColorName::Green],
        };
        let next = apply(&state, &op(OpAction::Swap { a: 0, b: 1 })).unwrap();
        assert_eq!(
            next,
            StateSnapshot::ShellGame {
                cells: vec![ColorName::Blue, ColorName::Red, ColorName::Green],
            }
        );
        // Input untouched.
        assert_eq!(
            state,
            StateSnapshot::ShellGame {
                cells: vec![ColorName::Red, ColorName::Blue, ColorName::Green],
            }
        );
    }

    #[test]
    fn register_multiplication() {
        let state = StateSnapshot::SymbolRegister { value: 5 };
        let next = apply(&state, &op(OpAction::Mul { k: 3 })).unwrap();
        assert_eq!(next, StateSnapshot::SymbolRegister { value: 15 });
    }

    #[test]
    fn insufficient_chips_error_names_the_op() {
        let state = StateSnapshot::ChipContainers { counts: vec![3, 2] };
        let err = apply(&state, &op(OpAction::Transfer { count: 4, from: 0, to: 1 })).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("op 1"), "{msg}");
        assert!(msg.contains("insufficient"), "{msg}");
    }

    #[test]
    fn swap_inverts_to_itself() {
        let swap = op(OpAction::Swap { a: 2, b: 0 });
        assert_eq!(invert(&swap).action, OpAction::Swap { a: 2, b: 0 });
    }

    #[test]
    fn mul_inverts_to_div() {
        let mul = op(OpAction::Mul { k: 3 });
        assert_eq!(invert(&mul).action, OpAction::Div { k: 3 });
        let state = StateSnapshot::SymbolRegister { value: 5 };
        let there = apply(&state, &mul).unwrap();
        let back = apply(&there, &invert(&mul)).unwrap();
        assert_eq!(back, state);
    }

    #[test]
    fn slide_semantics_move_the_tile() {
        // Blank in the middle; sliding a tile up moves the tile below it.
        let state = StateSnapshot::SlidingPuzzle {
            width: 3,
            height: 3,
            tiles: vec![1, 2, 3, 4, 0, 5, 6, 7, 8],
        };
        let next = apply(&state, &op(OpAction::Slide { dir: SlideDir::Up })).unwrap();
        assert_eq!(
            next,
            StateSnapshot::SlidingPuzzle {
                width: 3,
                height: 3,
                tiles: vec![1, 2, 3, 4, 7, 5, 6, 0, 8],
            }
        );
        let back = apply(&next, &op(OpAction::Slide { dir: SlideDir::Down })).unwrap();
        assert_eq!(back, state);
    }

    #[test]
    fn filesystem_leave_requires_matching_dir() {
        let mut root = tempogen_core::DirNode::new("/");
        root.insert_child("docs");
        let state = StateSnapshot::FileSystem { root, cwd: vec!["docs".into()] };
        assert!(apply(&state, &op(OpAction::Leave { dir: "src".into() })).is_err());
        let out = apply(&state, &op(OpAction::Leave { dir: "docs".into() })).unwrap();
        match &out {
            StateSnapshot::FileSystem { cwd, .. } => assert!(cwd.is_empty()),
            _ => unreachable!(),
        }
    }
}
