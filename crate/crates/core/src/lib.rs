//! Magic, bimagic, pandiagonal and palindromic squares over a restricted
//! digit alphabet, built from digit planes and checked exactly.
//!
//! Cells are fixed-width [`CodeWord`]s: `"0110"` and `"110"` are different
//! cells. A [`Square`] can be rotated by 180 degrees or reflected in a mirror
//! using the seven-segment readings of the digits ([`DigitMap::rotation`],
//! [`DigitMap::mirror`]), split into per-place digit planes
//! ([`Square::decompose`]) and audited with the [`verify`] predicates.
//!
//! The [`generate`] module builds squares by enumerating digit planes whose
//! rows, columns and diagonals share a constant sum and stacking them, so a
//! square made of `d` planes with sums `s_0..s_{d-1}` has magic sum
//! `Σ s_p · 10^(d-1-p)`. [`sevenseg`] renders squares as ASCII segment art
//! and rotates that text directly.
//!
//! The crate is `no_std` and only needs `alloc`. Time budgets are expressed
//! through the [`generate::Budget`] trait so the host decides what a clock is.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod codeword;
mod digit;
mod error;
mod square;

pub mod generate;
pub mod sevenseg;
pub mod verify;

pub use codeword::{CodeWord, MAX_WIDTH};
pub use digit::{Alphabet, Digit, DigitMap};
pub use error::{Error, Result};
pub use square::{Layer, LayerStack, Square};
