use core::fmt;
use core::str::FromStr;

use alloc::format;

use crate::{DigitMap, Error, Result};

/// Widest supported codeword. `10^18` squared still leaves headroom in `u128`
/// for line sums of squares.
pub const MAX_WIDTH: usize = 18;

/// A fixed-width decimal digit string, most significant digit first.
///
/// Leading zeros are part of the value's identity: `"0110"` and `"110"` have
/// the same numeric value but are different codewords.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodeWord {
    width: u8,
    // Unused tail is always zero so the derived comparisons stay lexicographic.
    digits: [u8; MAX_WIDTH],
}

impl CodeWord {
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        if digits.is_empty() || digits.len() > MAX_WIDTH {
            return Err(Error::InvalidCodeWord(format!(
                "width {} outside 1..={MAX_WIDTH}",
                digits.len()
            )));
        }
        let mut buf = [0u8; MAX_WIDTH];
        for (slot, &d) in buf.iter_mut().zip(digits) {
            if d > 9 {
                return Err(Error::InvalidCodeWord(format!("{d} is not a digit")));
            }
            *slot = d;
        }
        Ok(CodeWord {
            width: digits.len() as u8,
            digits: buf,
        })
    }

    /// Writes `value` zero-padded to `width` digits.
    pub fn from_value(value: u128, width: usize) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::InvalidCodeWord(format!(
                "width {width} outside 1..={MAX_WIDTH}"
            )));
        }
        let mut buf = [0u8; MAX_WIDTH];
        let mut rest = value;
        for slot in buf[..width].iter_mut().rev() {
            *slot = (rest % 10) as u8;
            rest /= 10;
        }
        if rest != 0 {
            return Err(Error::InvalidCodeWord(format!(
                "{value} does not fit in {width} digits"
            )));
        }
        Ok(CodeWord {
            width: width as u8,
            digits: buf,
        })
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits[..self.width()]
    }

    pub fn digit(&self, place: usize) -> u8 {
        self.digits()[place]
    }

    pub fn value(&self) -> u128 {
        self.digits()
            .iter()
            .fold(0u128, |acc, &d| acc * 10 + d as u128)
    }

    pub fn is_palindrome(&self) -> bool {
        let d = self.digits();
        d.iter().eq(d.iter().rev())
    }

    pub fn reversed(&self) -> CodeWord {
        let mut out = *self;
        out.digits[..self.width()].reverse();
        out
    }

    pub fn concat(&self, other: &CodeWord) -> Result<CodeWord> {
        let w = self.width() + other.width();
        if w > MAX_WIDTH {
            return Err(Error::InvalidCodeWord(format!(
                "width {w} exceeds {MAX_WIDTH}"
            )));
        }
        let mut out = *self;
        out.digits[self.width()..w].copy_from_slice(other.digits());
        out.width = w as u8;
        Ok(out)
    }

    /// `w ++ reverse(w)`.
    pub fn palindromic_extend(&self) -> Result<CodeWord> {
        self.concat(&self.reversed())
    }

    pub fn within(&self, domain: crate::Alphabet) -> bool {
        self.digits().iter().all(|&d| domain.contains(d))
    }

    /// Reverse the digit order and map every digit; this is how a digit
    /// string reads after turning the display upside down.
    pub fn rotate(&self, map: &DigitMap) -> Result<CodeWord> {
        self.reverse_and_map(map)
            .map_err(|(position, digit)| Error::NonRotatableDigit {
                cell: None,
                position,
                digit,
            })
    }

    /// Reverse the digit order and map every digit through the mirror map.
    pub fn mirror(&self, map: &DigitMap) -> Result<CodeWord> {
        self.reverse_and_map(map)
            .map_err(|(position, digit)| Error::NonMirrorableDigit {
                cell: None,
                position,
                digit,
            })
    }

    fn reverse_and_map(&self, map: &DigitMap) -> core::result::Result<CodeWord, (usize, u8)> {
        let w = self.width();
        let mut out = *self;
        for (i, &d) in self.digits().iter().enumerate() {
            let image = map.apply(d).ok_or((i, d))?;
            out.digits[w - 1 - i] = image;
        }
        Ok(out)
    }
}

impl FromStr for CodeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut buf = [0u8; MAX_WIDTH];
        let mut width = 0;
        for c in s.chars() {
            if width == MAX_WIDTH {
                return Err(Error::InvalidCodeWord(format!(
                    "{s:?} is wider than {MAX_WIDTH} digits"
                )));
            }
            buf[width] = c
                .to_digit(10)
                .ok_or_else(|| Error::InvalidCodeWord(format!("{s:?} contains {c:?}")))?
                as u8;
            width += 1;
        }
        CodeWord::from_digits(&buf[..width])
    }
}

impl fmt::Display for CodeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in self.digits() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CodeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for CodeWord {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for CodeWord {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> core::result::Result<Self, D::Error> {
        let s = <alloc::string::String as serde::Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
