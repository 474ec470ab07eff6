//! Scenario state snapshots for the six long-term families.
//!
//! A [`StateSnapshot`] is a complete, value-semantic description of a
//! scenario's world at one instant. `canonical_text` renders the full
//! state; `answer_text` renders the property a question about that state
//! asks for (the whole state for most families, the working directory for
//! the file-system family).

use crate::palette::ColorName;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Maximum cards a stack may hold (layout limit; `apply` enforces it).
pub const MAX_STACK_HEIGHT: usize = 8;
/// Maximum chips a container may hold.
pub const MAX_CHIPS: u32 = 12;
/// Register magnitude bound.
pub const MAX_REGISTER: i64 = 999;

/// The six long-term scenario families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    CardStacks,
    ChipContainers,
    FileSystem,
    SymbolRegister,
    ShellGame,
    SlidingPuzzle,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::CardStacks,
        Family::ChipContainers,
        Family::FileSystem,
        Family::SymbolRegister,
        Family::ShellGame,
        Family::SlidingPuzzle,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            Family::CardStacks => "card_stacks",
            Family::ChipContainers => "chip_containers",
            Family::FileSystem => "file_system",
            Family::SymbolRegister => "symbol_register",
            Family::ShellGame => "shell_game",
            Family::SlidingPuzzle => "sliding_puzzle",
        }
    }
}

/// A directory in the file-system family. Children are kept sorted by name
/// so structurally equal trees compare and serialize identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirNode {
    pub name: String,
    #[serde(default)]
    pub children: Vec<DirNode>,
}

impl DirNode {
    pub fn new(name: impl Into<String>) -> Self {
        DirNode { name: name.into(), children: Vec::new() }
    }

    pub fn child(&self, name: &str) -> Option<&DirNode> {
        self.children.iter().find(|c| c.name == name)
    }

    /// Inserts a child, keeping the sorted order. Fails if the name exists.
    pub fn insert_child(&mut self, name: &str) -> bool {
        if self.child(name).is_some() {
            return false;
        }
        let idx = self
            .children
            .binary_search_by(|c| c.name.as_str().cmp(name))
            .unwrap_err();
        self.children.insert(idx, DirNode::new(name));
        true
    }

    /// Removes an empty child directory. Fails if missing or non-empty.
    pub fn remove_empty_child(&mut self, name: &str) -> bool {
        match self.children.iter().position(|c| c.name == name) {
            Some(idx) if self.children[idx].children.is_empty() => {
                self.children.remove(idx);
                true
            }
            _ => false,
        }
    }

    /// Node at `path` relative to this one.
    pub fn node_at(&self, path: &[String]) -> Option<&DirNode> {
        let mut node = self;
        for part in path {
            node = node.child(part)?;
        }
        Some(node)
    }

    pub fn node_at_mut(&mut self, path: &[String]) -> Option<&mut DirNode> {
        let mut node = self;
        for part in path {
            node = node.children.iter_mut().find(|c| c.name == *part)?;
        }
        Some(node)
    }

    fn render_into(&self, out: &mut String) {
        out.push_str(&self.name);
        if !self.children.is_empty() {
            out.push('(');
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                c.render_into(out);
            }
            out.push(')');
        }
    }
}

/// Complete state of one scenario at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StateSnapshot {
    /// Stacks of value cards, bottom first.
    CardStacks { stacks: Vec<Vec<u8>> },
    /// Chip count per container; containers are lettered A, B, C, ...
    ChipContainers { counts: Vec<u32> },
    /// Directory tree plus current working directory path from the root.
    FileSystem { root: DirNode, cwd: Vec<String> },
    /// Single numeric register.
    SymbolRegister { value: i64 },
    /// One distinct colored ball under each cup, by cell position.
    ShellGame { cells: Vec<ColorName> },
    /// Row-major tile values; 0 is the blank.
    SlidingPuzzle { width: u8, height: u8, tiles: Vec<u8> },
}

impl StateSnapshot {
    pub fn family(&self) -> Family {
        match self {
            StateSnapshot::CardStacks { .. } => Family::CardStacks,
            StateSnapshot::ChipContainers { .. } => Family::ChipContainers,
            StateSnapshot::FileSystem { .. } => Family::FileSystem,
            StateSnapshot::SymbolRegister { .. } => Family::SymbolRegister,
            StateSnapshot::ShellGame { .. } => Family::ShellGame,
            StateSnapshot::SlidingPuzzle { .. } => Family::SlidingPuzzle,
        }
    }

    pub fn validate(&self) -> Result<(), StateError> {
        match self {
            StateSnapshot::CardStacks { stacks } => {
                if stacks.is_empty() {
                    return Err(StateError::Empty("card stacks"));
                }
                for stack in stacks {
                    if stack.len() > MAX_STACK_HEIGHT {
                        return Err(StateError::StackOverHeight(stack.len()));
                    }
                    if stack.iter().any(|&c| c == 0 || c > 9) {
                        return Err(StateError::CardValueOutOfRange);
                    }
                }
                Ok(())
            }
            StateSnapshot::ChipContainers { counts } => {
                if counts.len() < 2 {
                    return Err(StateError::Empty("chip containers"));
                }
                if counts.iter().any(|&c| c > MAX_CHIPS) {
                    return Err(StateError::ChipsOverCapacity);
                }
                Ok(())
            }
            StateSnapshot::FileSystem { root, cwd } => {
                check_dir(root)?;
                if root.node_at(cwd).is_none() {
                    return Err(StateError::CwdNotInTree);
                }
                Ok(())
            }
            StateSnapshot::SymbolRegister { value } => {
                if value.abs() > MAX_REGISTER {
                    return Err(StateError::RegisterOutOfRange(*value));
                }
                Ok(())
            }
            StateSnapshot::ShellGame { cells } => {
                if cells.len() < 2 {
                    return Err(StateError::Empty("shell game cells"));
                }
                let mut seen = std::collections::BTreeSet::new();
                if !cells.iter().all(|c| seen.insert(*c)) {
                    return Err(StateError::ShellNotBijective);
                }
                Ok(())
            }
            StateSnapshot::SlidingPuzzle { width, height, tiles } => {
                let n = *width as usize * *height as usize;
                if n == 0 || tiles.len() != n {
                    return Err(StateError::PuzzleShapeMismatch);
                }
                let mut sorted: Vec<u8> = tiles.clone();
                sorted.sort_unstable();
                let expected: Vec<u8> = (0..n as u8).collect();
                if sorted != expected {
                    return Err(StateError::PuzzleNotPermutation);
                }
                Ok(())
            }
        }
    }

    /// Full-state canonical rendering. Stable; also the format used for
    /// leak checks against question text.
    pub fn canonical_text(&self) -> String {
        match self {
            StateSnapshot::CardStacks { stacks } => stacks
                .iter()
                .enumerate()
                .map(|(i, stack)| {
                    let cards = if stack.is_empty() {
                        "empty".to_string()
                    } else {
                        stack
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    format!("stack {}: {}", i + 1, cards)
                })
                .collect::<Vec<_>>()
                .join("; "),
            StateSnapshot::ChipContainers { counts } => counts
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{}={}", container_letter(i), c))
                .collect::<Vec<_>>()
                .join(", "),
            StateSnapshot::FileSystem { root, cwd } => {
                let mut tree = String::new();
                root.render_into(&mut tree);
                format!("cwd {} tree {}", render_path(cwd), tree)
            }
            StateSnapshot::SymbolRegister { value } => value.to_string(),
            StateSnapshot::ShellGame { cells } => cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("cup {}: {}", i + 1, c))
                .collect::<Vec<_>>()
                .join(", "),
            StateSnapshot::SlidingPuzzle { width, tiles, .. } => tiles
                .chunks(*width as usize)
                .map(|row| {
                    row.iter()
                        .map(|&t| if t == 0 { "_".to_string() } else { t.to_string() })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join(" / "),
        }
    }

    /// The property a question about this state asks for.
    pub fn answer_text(&self) -> String {
        match self {
            StateSnapshot::FileSystem { cwd, .. } => render_path(cwd),
            other => other.canonical_text(),
        }
    }
}

fn check_dir(node: &DirNode) -> Result<(), StateError> {
    let mut prev: Option<&str> = None;
    for child in &node.children {
        if let Some(p) = prev {
            if p >= child.name.as_str() {
                return Err(StateError::DirChildrenUnsorted);
            }
        }
        prev = Some(child.name.as_str());
        check_dir(child)?;
    }
    Ok(())
}

/// "A", "B", ... container label.
pub fn container_letter(index: usize) -> char {
    (b'A' + index as u8) as char
}

/// "/a/b" path rendering; the root is "/".
pub fn render_path(path: &[String]) -> String {
    if path.is_empty() {
        "/".to_string()
    } else {
        format!("/{}", path.join("/"))
    }
}

#[derive(Debug, Error)]
pub enum StateError {
    #[error("{0} state must not be empty")]
    Empty(&'static str),
    #[error("stack height {0} exceeds the maximum")]
    StackOverHeight(usize),
    #[error("card values must be in 1..=9")]
    CardValueOutOfRange,
    #[error("container chip count exceeds capacity")]
    ChipsOverCapacity,
    #[error("working directory path not present in the tree")]
    CwdNotInTree,
    #[error("directory children not sorted by name")]
    DirChildrenUnsorted,
    #[error("register value {0} out of range")]
    RegisterOutOfRange(i64),
    #[error("shell game cells must hold pairwise distinct objects")]
    ShellNotBijective,
    #[error("puzzle tile count does not match its dimensions")]
    PuzzleShapeMismatch,
    #[error("puzzle tiles are not a permutation with one blank")]
    PuzzleNotPermutation,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_game_requires_bijection() {
        let ok = StateSnapshot::ShellGame {
            cells: vec![ColorName::Red, ColorName::Blue, ColorName::Green],
        };
        ok.validate().unwrap();
        let bad = StateSnapshot::ShellGame {
            cells: vec![ColorName::Red, ColorName::Red, ColorName::Green],
        };
        assert!(matches!(bad.validate(), Err(StateError::ShellNotBijective)));
    }

    #[test]
    fn puzzle_must_be_permutation_with_blank() {
        let ok = StateSnapshot::SlidingPuzzle {
            width: 3,
            height: 3,
            tiles: vec![1, 2, 3, 4, 0, 5, 6, 7, 8],
        };
        ok.validate().unwrap();
        let bad = StateSnapshot::SlidingPuzzle {
            width: 3,
            height: 3,
            tiles: vec![1, 2, 3, 4, 4, 5, 6, 7, 8],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn canonical_texts_are_stable() {
        let cards = StateSnapshot::CardStacks { stacks: vec![vec![3, 7], vec![]] };
        assert_eq!(cards.canonical_text(), "stack 1: 3 7; stack 2: empty");

        let chips = StateSnapshot::ChipContainers { counts: vec![3, 5, 2] };
        assert_eq!(chips.canonical_text(), "A=3, B=5, C=2");

        let puzzle = StateSnapshot::SlidingPuzzle {
            width: 3,
            height: 3,
            tiles: vec![1, 2, 3, 4, 0, 5, 6, 7, 8],
        };
        assert_eq!(puzzle.canonical_text(), "1 2 3 / 4 _ 5 / 6 7 8");

        let mut root = DirNode::new("/");
        root.insert_child("docs");
        root.insert_child("src");
        let fs = StateSnapshot::FileSystem { root, cwd: vec!["docs".into()] };
        assert_eq!(fs.answer_text(), "/docs");
        assert_eq!(fs.canonical_text(), "cwd /docs tree /(docs src)");
    }
}
