//! Fixed color palette.
//!
//! Eight named colors with pinned RGB values. Question text refers to
//! objects by color name, so the names must map to exactly one rendered
//! color; the values are chosen to stay distinguishable on the light
//! default background.

use serde::{Deserialize, Serialize};

/// 24-bit RGB color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Rgb { r, g, b }
    }
}

/// The eight palette colors usable for objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorName {
    Red,
    Blue,
    Green,
    Yellow,
    Orange,
    Purple,
    Cyan,
    Magenta,
}

impl ColorName {
    pub const ALL: [ColorName; 8] = [
        ColorName::Red,
        ColorName::Blue,
        ColorName::Green,
        ColorName::Yellow,
        ColorName::Orange,
        ColorName::Purple,
        ColorName::Cyan,
        ColorName::Magenta,
    ];

    pub fn rgb(self) -> Rgb {
        match self {
            ColorName::Red => Rgb::new(214, 39, 40),
            ColorName::Blue => Rgb::new(31, 119, 180),
            ColorName::Green => Rgb::new(44, 160, 44),
            ColorName::Yellow => Rgb::new(219, 161, 0),
            ColorName::Orange => Rgb::new(255, 127, 14),
            ColorName::Purple => Rgb::new(148, 103, 189),
            ColorName::Cyan => Rgb::new(23, 190, 207),
            ColorName::Magenta => Rgb::new(227, 119, 194),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ColorName::Red => "red",
            ColorName::Blue => "blue",
            ColorName::Green => "green",
            ColorName::Yellow => "yellow",
            ColorName::Orange => "orange",
            ColorName::Purple => "purple",
            ColorName::Cyan => "cyan",
            ColorName::Magenta => "magenta",
        }
    }
}

impl std::fmt::Display for ColorName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn palette_has_eight_distinct_colors_and_names() {
        let names: BTreeSet<_> = ColorName::ALL.iter().map(|c| c.name()).collect();
        let rgbs: BTreeSet<_> = ColorName::ALL
            .iter()
            .map(|c| {
                let Rgb { r, g, b } = c.rgb();
                (r, g, b)
            })
            .collect();
        assert_eq!(names.len(), 8);
        assert_eq!(rgbs.len(), 8);
    }
}
