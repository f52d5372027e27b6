//! Seven-segment ASCII rendering and 180-degree rotation of rendered text.
//!
//! Every digit occupies a 3×3 character cell:
//!
//! ```text
//!  a        " _ "
//! f g b     "|_|"
//! e d c     "|_|"
//! ```
//!
//! Digits within a codeword are separated by one blank column, so a width-`w`
//! codeword renders as 3 rows of `4w - 1` characters.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{CodeWord, Error, Result, Square};

/// Segment set of one digit, bit `k` for segment `a + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegmentGlyph(u8);

const A: u8 = 1 << 0;
const B: u8 = 1 << 1;
const C: u8 = 1 << 2;
const D: u8 = 1 << 3;
const E: u8 = 1 << 4;
const F: u8 = 1 << 5;
const G: u8 = 1 << 6;

const DIGITS: [u8; 10] = [
    A | B | C | D | E | F,
    B | C,
    A | B | G | E | D,
    A | B | C | D | G,
    F | G | B | C,
    A | F | G | C | D,
    A | F | G | E | C | D,
    A | B | C,
    A | B | C | D | E | F | G,
    A | B | C | D | F | G,
];

// Where each segment is drawn inside the 3×3 cell.
const SEGMENTS: [(usize, usize, char, u8); 7] = [
    (0, 1, '_', A),
    (1, 0, '|', F),
    (1, 1, '_', G),
    (1, 2, '|', B),
    (2, 0, '|', E),
    (2, 1, '_', D),
    (2, 2, '|', C),
];

impl SegmentGlyph {
    pub fn for_digit(digit: u8) -> Option<Self> {
        DIGITS.get(digit as usize).map(|&m| SegmentGlyph(m))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn has(self, segment: char) -> bool {
        match segment {
            'a'..='g' => self.0 & (1 << (segment as u8 - b'a')) != 0,
            _ => false,
        }
    }

    /// The digit this segment set spells, if any. A `1` drawn on the left
    /// segments, which is what an upside-down `1` looks like, still reads as 1.
    pub fn digit(self) -> Option<u8> {
        if self.0 == E | F {
            return Some(1);
        }
        DIGITS.iter().position(|&m| m == self.0).map(|d| d as u8)
    }

    /// The standard drawing of whatever digit this spells; other segment
    /// sets are returned unchanged.
    pub fn canonical(self) -> Self {
        self.digit()
            .and_then(SegmentGlyph::for_digit)
            .unwrap_or(self)
    }

    /// Turns the glyph upside down: a↔d, b↔e, c↔f, g stays.
    pub fn rotate(self) -> Self {
        const SWAPS: [(u8, u8); 3] = [(A, D), (B, E), (C, F)];
        let mut out = self.0 & G;
        for (x, y) in SWAPS {
            if self.0 & x != 0 {
                out |= y;
            }
            if self.0 & y != 0 {
                out |= x;
            }
        }
        SegmentGlyph(out)
    }

    fn rows(self) -> [[char; 3]; 3] {
        let mut rows = [[' '; 3]; 3];
        for (r, c, ch, seg) in SEGMENTS {
            if self.0 & seg != 0 {
                rows[r][c] = ch;
            }
        }
        rows
    }
}

/// The three rows of a codeword, each exactly `4w - 1` characters.
pub fn render_codeword(word: &CodeWord) -> [String; 3] {
    let mut rows: [String; 3] = Default::default();
    for (k, &d) in word.digits().iter().enumerate() {
        let glyph = SegmentGlyph::for_digit(d).expect("codeword digits are 0-9");
        for (row, cells) in rows.iter_mut().zip(glyph.rows()) {
            if k > 0 {
                row.push(' ');
            }
            row.extend(cells);
        }
    }
    rows
}

fn push_lines<'a>(out: &mut String, lines: impl IntoIterator<Item = &'a str>) {
    for line in lines {
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

/// A codeword as newline-terminated text with trailing blanks removed.
pub fn render_codeword_text(word: &CodeWord) -> String {
    let mut out = String::new();
    push_lines(&mut out, render_codeword(word).iter().map(String::as_str));
    out
}

/// Geometry of a rendered square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Layout {
    order: usize,
    width: usize,
    compact: bool,
}

impl Layout {
    fn band_height(&self) -> usize {
        if self.compact {
            3
        } else {
            4
        }
    }

    fn height(&self) -> usize {
        self.order * self.band_height() - usize::from(!self.compact)
    }

    fn columns(&self) -> usize {
        self.order * (4 * self.width + 1) - 2
    }

    /// Top-left corner of digit `k` of cell `(i, j)`.
    fn origin(&self, i: usize, j: usize, k: usize) -> (usize, usize) {
        (i * self.band_height(), j * (4 * self.width + 1) + 4 * k)
    }

    fn slots(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let (n, w) = (self.order, self.width);
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..w).map(move |k| (i, j, k))))
    }

    /// Candidate layouts for a `height × columns` block.
    fn infer(height: usize, columns: usize) -> Vec<Layout> {
        let mut out = Vec::new();
        for compact in [false, true] {
            let order = if compact {
                (height % 3 == 0).then_some(height / 3)
            } else {
                ((height + 1) % 4 == 0).then_some((height + 1) / 4)
            };
            let Some(order) = order.filter(|&n| n > 0) else {
                continue;
            };
            let span = columns + 2;
            if span % order == 0 && (span / order - 1) % 4 == 0 && span / order > 1 {
                let width = (span / order - 1) / 4;
                out.push(Layout {
                    order,
                    width,
                    compact,
                });
            }
        }
        out
    }

    fn draw(&self, glyphs: &[SegmentGlyph]) -> String {
        let mut grid = alloc::vec![alloc::vec![' '; self.columns()]; self.height()];
        for ((i, j, k), glyph) in self.slots().zip(glyphs) {
            let (r0, c0) = self.origin(i, j, k);
            for (dr, row) in glyph.rows().iter().enumerate() {
                grid[r0 + dr][c0..c0 + 3].copy_from_slice(row);
            }
        }
        let lines: Vec<String> = grid.into_iter().map(|r| r.into_iter().collect()).collect();
        let mut out = String::new();
        push_lines(&mut out, lines.iter().map(String::as_str));
        out
    }

    /// Reads every digit cell back, rejecting stray characters.
    fn read(&self, grid: &[Vec<char>]) -> Result<Vec<SegmentGlyph>> {
        let mut claimed = alloc::vec![alloc::vec![false; self.columns()]; self.height()];
        let mut glyphs = Vec::with_capacity(self.order * self.order * self.width);
        for (i, j, k) in self.slots() {
            let (r0, c0) = self.origin(i, j, k);
            let mut mask = 0;
            for (dr, dc, ch, seg) in SEGMENTS {
                let (r, c) = (r0 + dr, c0 + dc);
                claimed[r][c] = true;
                match grid[r][c] {
                    ' ' => {}
                    found if found == ch => mask |= seg,
                    found => {
                        return Err(Error::MalformedBlock(format!(
                            "unexpected {found:?} at line {}, column {}",
                            r + 1,
                            c + 1
                        )))
                    }
                }
            }
            glyphs.push(SegmentGlyph(mask));
        }
        for (r, row) in grid.iter().enumerate() {
            for (c, &ch) in row.iter().enumerate() {
                if ch != ' ' && !claimed[r][c] {
                    return Err(Error::MalformedBlock(format!(
                        "stray {ch:?} at line {}, column {}",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        Ok(glyphs)
    }
}

/// Renders a square: cells separated by two spaces, rows of cells by one
/// blank line (none when `compact`). Lines carry no trailing whitespace.
pub fn render_square(square: &Square, compact: bool) -> String {
    let layout = Layout {
        order: square.order(),
        width: square.width(),
        compact,
    };
    let glyphs: Vec<SegmentGlyph> = square
        .cells()
        .iter()
        .flat_map(|cell| cell.digits().iter())
        .map(|&d| SegmentGlyph::for_digit(d).expect("codeword digits are 0-9"))
        .collect();
    layout.draw(&glyphs)
}

/// Turns rendered text upside down.
///
/// Accepts the output of [`render_codeword_text`] or [`render_square`]
/// (either spacing); the layout is recovered from the block's dimensions.
/// Every glyph is read back into segments, turned over and redrawn in the
/// mirrored position, so the result is the rendering of the rotated
/// codeword or square. Digits with no upright reading (3, 4, 7) come out as
/// their raw turned-over segments.
pub fn rotate_text(block: &str) -> Result<String> {
    let body = block.strip_suffix('\n').unwrap_or(block);
    let lines: Vec<Vec<char>> = body.split('\n').map(|l| l.chars().collect()).collect();
    let h = lines.len();
    let w = lines.iter().map(Vec::len).max().unwrap_or(0);
    let layouts = Layout::infer(h, w);
    if layouts.is_empty() {
        return Err(Error::MalformedBlock(format!(
            "{h} lines of {w} columns is not a rendered block"
        )));
    }
    let grid: Vec<Vec<char>> = lines
        .into_iter()
        .map(|mut l| {
            l.resize(w, ' ');
            l
        })
        .collect();
    let mut last = None;
    for layout in layouts {
        match layout.read(&grid) {
            Ok(glyphs) => {
                let turned: Vec<SegmentGlyph> = glyphs
                    .iter()
                    .rev()
                    .map(|g| g.rotate().canonical())
                    .collect();
                return Ok(layout.draw(&turned));
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one layout was tried"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DigitMap;

    fn cw(s: &str) -> CodeWord {
        s.parse().unwrap()
    }

    #[test]
    fn glyph_rows() {
        assert_eq!(
            render_codeword(&cw("2")),
            [" _ ", " _|", "|_ "].map(String::from)
        );
        assert_eq!(
            render_codeword(&cw("1")),
            ["   ", "  |", "  |"].map(String::from)
        );
        assert_eq!(
            render_codeword(&cw("0")),
            [" _ ", "| |", "|_|"].map(String::from)
        );
        assert_eq!(
            render_codeword(&cw("10")),
            ["     _ ", "  | | |", "  | |_|"].map(String::from)
        );
    }

    #[test]
    fn segment_rotation_matches_digit_map() {
        let map = DigitMap::rotation();
        for d in 0..10u8 {
            let rotated = SegmentGlyph::for_digit(d).unwrap().rotate();
            assert_eq!(rotated.digit(), map.apply(d), "digit {d}");
        }
        assert_eq!(
            SegmentGlyph::for_digit(6).unwrap().rotate(),
            SegmentGlyph::for_digit(9).unwrap()
        );
        let two = SegmentGlyph::for_digit(2).unwrap();
        assert!(two.has('g') && !two.has('f') && !two.has('z'));
    }

    #[test]
    fn rotate_text_examples() {
        let zero = render_codeword_text(&cw("0"));
        assert_eq!(rotate_text(&zero).unwrap(), zero);
        let twelve = render_codeword_text(&cw("12"));
        assert_eq!(
            rotate_text(&twelve).unwrap(),
            render_codeword_text(&cw("21"))
        );
        let six = render_codeword_text(&cw("1690"));
        let once = rotate_text(&six).unwrap();
        assert_eq!(once, render_codeword_text(&cw("0691")));
        assert_eq!(rotate_text(&once).unwrap(), six);
    }

    #[test]
    fn malformed_blocks() {
        assert!(rotate_text("").is_err());
        assert!(rotate_text(" _\n|_|\n").is_err());
        assert!(rotate_text(" | \n   \n   \n").is_err());
        assert!(rotate_text(" x \n   \n   \n").is_err());
        assert!(rotate_text("    \n    \n    \n").is_err());
    }

    #[test]
    fn square_layout() {
        let s = Square::from_rows(&[["1", "2"], ["0", "1"]]).unwrap();
        let text = render_square(&s, false);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[1], "  |   _|");
        assert_eq!(lines[3], "");
        assert!(lines.iter().all(|l| l.trim_end() == *l));
        assert_eq!(render_square(&s, true).lines().count(), 6);
        let one = Square::from_rows(&[["1"]]).unwrap();
        assert_eq!(render_square(&one, false), render_codeword_text(&cw("1")));
    }

    #[test]
    fn rotating_rendered_squares() {
        let map = DigitMap::rotation();
        let s = Square::from_rows(&[["10", "22", "01"], ["02", "11", "20"], ["21", "00", "12"]])
            .unwrap();
        for compact in [false, true] {
            let rotated = rotate_text(&render_square(&s, compact)).unwrap();
            assert_eq!(rotated, render_square(&s.rotate(&map).unwrap(), compact));
        }
    }
}
