use core::fmt;

use alloc::format;

use crate::{Error, Result};

/// A single decimal digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digit(u8);

impl Digit {
    pub const fn new(value: u8) -> Option<Self> {
        if value <= 9 {
            Some(Digit(value))
        } else {
            None
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        c.to_digit(10)
            .map(|d| Digit(d as u8))
            .ok_or(Error::InvalidDigit(c))
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn to_char(self) -> char {
        (b'0' + self.0) as char
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A non-empty set of digits, iterated in ascending order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    mask: u16,
}

impl Alphabet {
    /// `{0, 1, 2}`.
    pub const DEFAULT: Alphabet = Alphabet { mask: 0b111 };

    pub fn new(digits: &[u8]) -> Result<Self> {
        let mut mask = 0u16;
        for &d in digits {
            if d > 9 {
                return Err(Error::InvalidAlphabet(format!("{d} is not a digit")));
            }
            if mask & (1 << d) != 0 {
                return Err(Error::InvalidAlphabet(format!("duplicate digit {d}")));
            }
            mask |= 1 << d;
        }
        if mask == 0 {
            return Err(Error::InvalidAlphabet("empty alphabet".into()));
        }
        Ok(Alphabet { mask })
    }

    /// Parses a string of digit characters such as `"012"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut digits = alloc::vec::Vec::with_capacity(s.len());
        for c in s.chars() {
            digits
                .push(Digit::from_char(c).map_err(|_| {
                    Error::InvalidAlphabet(format!("{c:?} is not a decimal digit"))
                })?);
        }
        let raw: alloc::vec::Vec<u8> = digits.iter().map(|d| d.value()).collect();
        Self::new(&raw)
    }

    pub(crate) const fn from_mask(mask: u16) -> Self {
        Alphabet { mask }
    }

    pub fn contains(self, digit: u8) -> bool {
        digit <= 9 && self.mask & (1 << digit) != 0
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn min(self) -> u8 {
        self.mask.trailing_zeros() as u8
    }

    pub fn max(self) -> u8 {
        15 - self.mask.leading_zeros() as u8
    }

    pub fn iter(self) -> impl Iterator<Item = u8> + Clone {
        (0..10u8).filter(move |&d| self.mask & (1 << d) != 0)
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.iter() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

/// A partial map on digits, used for the 180-degree and mirror readings of
/// seven-segment digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DigitMap {
    image: [Option<u8>; 10],
}

impl DigitMap {
    /// Upside-down reading: 0, 1, 2, 5, 8 are fixed, 6 and 9 swap.
    pub const fn rotation() -> Self {
        DigitMap {
            image: [
                Some(0),
                Some(1),
                Some(2),
                None,
                None,
                Some(5),
                Some(9),
                None,
                Some(8),
                Some(6),
            ],
        }
    }

    /// Mirror reading: 2 and 5 swap, 0, 1, 8 are fixed.
    pub const fn mirror() -> Self {
        DigitMap {
            image: [
                Some(0),
                Some(1),
                Some(5),
                None,
                None,
                Some(2),
                None,
                None,
                Some(8),
                None,
            ],
        }
    }

    pub fn from_pairs(pairs: &[(u8, u8)]) -> Result<Self> {
        let mut image = [None; 10];
        for &(from, to) in pairs {
            if from > 9 || to > 9 {
                return Err(Error::InvalidAlphabet(format!(
                    "({from}, {to}) is not a digit pair"
                )));
            }
            image[from as usize] = Some(to);
        }
        Ok(DigitMap { image })
    }

    pub fn apply(&self, digit: u8) -> Option<u8> {
        self.image.get(digit as usize).copied().flatten()
    }

    pub fn domain(&self) -> Alphabet {
        let mask = self
            .image
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_some())
            .fold(0u16, |acc, (d, _)| acc | (1 << d));
        Alphabet::from_mask(mask)
    }

    pub fn is_involution(&self) -> bool {
        self.image.iter().enumerate().all(|(d, m)| match m {
            Some(t) => self.apply(*t) == Some(d as u8),
            None => true,
        })
    }

    /// Image of an alphabet, when every digit of it is mapped.
    pub fn map_alphabet(&self, alphabet: Alphabet) -> Option<Alphabet> {
        let mut mask = 0u16;
        for d in alphabet.iter() {
            mask |= 1 << self.apply(d)?;
        }
        Some(Alphabet::from_mask(mask))
    }
}
