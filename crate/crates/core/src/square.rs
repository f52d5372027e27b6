use core::fmt;

use alloc::format;
use alloc::vec::Vec;

use crate::{Alphabet, CodeWord, DigitMap, Error, Result};

/// An `n × n` grid of equal-width codewords, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    order: usize,
    width: usize,
    cells: Vec<CodeWord>,
    alphabet: Option<Alphabet>,
}

impl Square {
    /// Builds a square from row-major cells. All cells must share one width.
    pub fn new(order: usize, cells: Vec<CodeWord>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ShapeMismatch("order must be at least 1".into()));
        }
        if cells.len() != order * order {
            return Err(Error::ShapeMismatch(format!(
                "{} cells for order {order}",
                cells.len()
            )));
        }
        let width = cells[0].width();
        if let Some((k, c)) = cells.iter().enumerate().find(|(_, c)| c.width() != width) {
            return Err(Error::ShapeMismatch(format!(
                "cell ({}, {}) has width {} but the square has width {width}",
                k / order,
                k % order,
                c.width()
            )));
        }
        check_magnitude(order, width)?;
        Ok(Square {
            order,
            width,
            cells,
            alphabet: None,
        })
    }

    /// Builds a square from rows of digit strings.
    pub fn from_rows<R, S>(rows: &[R]) -> Result<Self>
    where
        R: AsRef<[S]>,
        S: AsRef<str>,
    {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} cells, expected {order}",
                    row.len()
                )));
            }
            for s in row {
                cells.push(s.as_ref().parse()?);
            }
        }
        Square::new(order, cells)
    }

    /// Attaches an alphabet after checking every digit belongs to it.
    pub fn with_alphabet(mut self, alphabet: Alphabet) -> Result<Self> {
        for (k, cell) in self.cells.iter().enumerate() {
            if let Some(&d) = cell.digits().iter().find(|&&d| !alphabet.contains(d)) {
                return Err(Error::InvalidCodeWord(format!(
                    "cell ({}, {}) = {cell} uses digit {d} outside alphabet {alphabet}",
                    k / self.order,
                    k % self.order
                )));
            }
        }
        self.alphabet = Some(alphabet);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn alphabet(&self) -> Option<Alphabet> {
        self.alphabet
    }

    pub fn get(&self, row: usize, col: usize) -> &CodeWord {
        &self.cells[row * self.order + col]
    }

    pub fn cells(&self) -> &[CodeWord] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CodeWord]> {
        self.cells.chunks(self.order)
    }

    /// Turns the square upside down: cell `(i, j)` receives the rotated
    /// codeword from `(n-1-i, n-1-j)`.
    pub fn rotate(&self, map: &DigitMap) -> Result<Square> {
        let n = self.order;
        self.remap(map, |i, j| (n - 1 - i, n - 1 - j), |cw, m| cw.rotate(m))
    }

    /// Reflects the square about a vertical axis: columns flip and every
    /// codeword is mirrored.
    pub fn mirror(&self, map: &DigitMap) -> Result<Square> {
        let n = self.order;
        self.remap(map, |i, j| (i, n - 1 - j), |cw, m| cw.mirror(m))
    }

    fn remap(
        &self,
        map: &DigitMap,
        source: impl Fn(usize, usize) -> (usize, usize),
        transform: impl Fn(&CodeWord, &DigitMap) -> Result<CodeWord>,
    ) -> Result<Square> {
        let n = self.order;
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let (si, sj) = source(i, j);
                let cw = transform(self.get(si, sj), map).map_err(|e| match e {
                    Error::NonRotatableDigit {
                        position, digit, ..
                    } => Error::NonRotatableDigit {
                        cell: Some((si, sj)),
                        position,
                        digit,
                    },
                    Error::NonMirrorableDigit {
                        position, digit, ..
                    } => Error::NonMirrorableDigit {
                        cell: Some((si, sj)),
                        position,
                        digit,
                    },
                    other => other,
                })?;
                cells.push(cw);
            }
        }
        Ok(Square {
            order: n,
            width: self.width,
            cells,
            alphabet: self.alphabet.and_then(|a| map.map_alphabet(a)),
        })
    }

    /// Splits the square into its digit planes, most significant first.
    pub fn decompose(&self) -> LayerStack {
        let layers = (0..self.width)
            .map(|p| Layer {
                order: self.order,
                cells: self.cells.iter().map(|c| c.digit(p)).collect(),
            })
            .collect();
        LayerStack {
            order: self.order,
            layers,
        }
    }

    /// Replaces every cell `w` with `w ++ reverse(w)`, doubling the width.
    pub fn palindromic_extend(&self) -> Result<Square> {
        let cells = self
            .cells
            .iter()
            .map(CodeWord::palindromic_extend)
            .collect::<Result<Vec<_>>>()?;
        check_magnitude(self.order, self.width * 2)?;
        Ok(Square {
            order: self.order,
            width: self.width * 2,
            cells,
            alphabet: self.alphabet,
        })
    }
}

/// Sums of up to `n²` squared cell values must stay exact in `u128`.
fn check_magnitude(order: usize, width: usize) -> Result<()> {
    let cell_bound = 10u128.checked_pow(width as u32).ok_or(Error::TooLarge)?;
    let count = (order as u128)
        .checked_mul(order as u128)
        .ok_or(Error::TooLarge)?;
    cell_bound
        .checked_mul(cell_bound)
        .and_then(|sq| sq.checked_mul(count))
        .map(|_| ())
        .ok_or(Error::TooLarge)
}

impl fmt::Debug for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// An `n × n` grid of single digits, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    order: usize,
    cells: Vec<u8>,
}

impl Layer {
    pub fn new(order: usize, cells: Vec<u8>) -> Result<Self> {
        if order == 0 || cells.len() != order * order {
            return Err(Error::ShapeMismatch(format!(
                "{} digits for a layer of order {order}",
                cells.len()
            )));
        }
        if cells.iter().any(|&d| d > 9) {
            return Err(Error::InvalidCodeWord("layer digit above 9".into()));
        }
        Ok(Layer { order, cells })
    }

    pub(crate) fn from_raw(order: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        Layer { order, cells }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::ShapeMismatch("layer rows must be square".into()));
        }
        Layer::new(order, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.order + col]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.order)
    }
}

impl fmt::Debug for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// The digit-plane view of a square: layer 0 holds the most significant
/// digit of every cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerStack {
    order: usize,
    layers: Vec<Layer>,
}

impl LayerStack {
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        let order = layers
            .first()
            .ok_or_else(|| Error::ShapeMismatch("no layers to stack".into()))?
            .order;
        if let Some((p, l)) = layers.iter().enumerate().find(|(_, l)| l.order != order) {
            return Err(Error::ShapeMismatch(format!(
                "layer {p} has order {} but layer 0 has order {order}",
                l.order
            )));
        }
        Ok(LayerStack { order, layers })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn width(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<Layer> {
        self.layers
    }

    /// Reassembles the square; the inverse of [`Square::decompose`].
    pub fn recompose(&self) -> Result<Square> {
        let n = self.order;
        let mut buf = Vec::with_capacity(self.layers.len());
        let mut cells = Vec::with_capacity(n * n);
        for k in 0..n * n {
            buf.clear();
            buf.extend(self.layers.iter().map(|l| l.cells[k]));
            cells.push(CodeWord::from_digits(&buf)?);
        }
        Square::new(n, cells)
    }
}
