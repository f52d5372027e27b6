//! Exact checks for the properties a square can claim: magic and bimagic line
//! sums, broken diagonals, aligned block totals, palindromic or distinct
//! entries, plus the sum-of-squares oracle used to audit published values.
//!
//! Absence of a property is an ordinary result. Errors are reserved for
//! malformed questions, such as a block size that does not divide the order.

use core::fmt;

use alloc::format;
use alloc::vec::Vec;

use crate::{CodeWord, DigitMap, Error, Result, Square};

/// One of the `2n + 2` lines of a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(tag = "kind", content = "index", rename_all = "snake_case")
)]
pub enum LineId {
    Row(usize),
    Column(usize),
    MainDiagonal,
    AntiDiagonal,
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineId::Row(i) => write!(f, "row {i}"),
            LineId::Column(j) => write!(f, "col {j}"),
            LineId::MainDiagonal => f.write_str("diagonal"),
            LineId::AntiDiagonal => f.write_str("anti-diagonal"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LineSum {
    pub line: LineId,
    pub sum: u128,
    pub sum_of_squares: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BlockResult {
    pub k: usize,
    pub common_sum: Option<u128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EntryProperties {
    pub all_palindromic: bool,
    pub all_distinct: bool,
    pub rotation_closed: bool,
}

/// Everything [`report`] computes about a square.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PropertyReport {
    pub order: usize,
    pub width: usize,
    /// Common line sum, when all `2n + 2` sums agree.
    pub s1: Option<u128>,
    /// Common line sum of squares, when all `2n + 2` agree. Reported even if
    /// the plain sums differ.
    pub s2: Option<u128>,
    pub is_magic: bool,
    pub is_bimagic: bool,
    pub is_pandiagonal: bool,
    pub is_pandiagonal_bimagic: bool,
    pub block_results: Vec<BlockResult>,
    pub all_entries_palindromic: bool,
    pub all_entries_distinct: bool,
    pub rotation_closed: bool,
    pub line_sums: Vec<LineSum>,
}

fn accumulate(cells: impl Iterator<Item = u128>) -> (u128, u128) {
    cells.fold((0, 0), |(s, q), v| (s + v, q + v * v))
}

/// Sums and sums of squares of every row, column and both main diagonals,
/// in that order.
pub fn line_sums(square: &Square) -> Vec<LineSum> {
    let n = square.order();
    let value = |i: usize, j: usize| square.get(i, j).value();
    let mut out = Vec::with_capacity(2 * n + 2);
    for i in 0..n {
        let (sum, sum_of_squares) = accumulate((0..n).map(|j| value(i, j)));
        out.push(LineSum {
            line: LineId::Row(i),
            sum,
            sum_of_squares,
        });
    }
    for j in 0..n {
        let (sum, sum_of_squares) = accumulate((0..n).map(|i| value(i, j)));
        out.push(LineSum {
            line: LineId::Column(j),
            sum,
            sum_of_squares,
        });
    }
    let (sum, sum_of_squares) = accumulate((0..n).map(|i| value(i, i)));
    out.push(LineSum {
        line: LineId::MainDiagonal,
        sum,
        sum_of_squares,
    });
    let (sum, sum_of_squares) = accumulate((0..n).map(|i| value(i, n - 1 - i)));
    out.push(LineSum {
        line: LineId::AntiDiagonal,
        sum,
        sum_of_squares,
    });
    out
}

fn common<T: PartialEq + Copy>(mut values: impl Iterator<Item = T>) -> Option<T> {
    let first = values.next()?;
    values.all(|v| v == first).then_some(first)
}

/// The magic sum S1, if every line agrees.
pub fn check_magic(square: &Square) -> Option<u128> {
    common(line_sums(square).iter().map(|l| l.sum))
}

/// `(S1, S2)` if both the line sums and the line sums of squares are constant.
pub fn check_bimagic(square: &Square) -> Option<(u128, u128)> {
    let lines = line_sums(square);
    let s1 = common(lines.iter().map(|l| l.sum))?;
    let s2 = common(lines.iter().map(|l| l.sum_of_squares))?;
    Some((s1, s2))
}

/// Sums over the `2n` broken diagonals: `n` running down-right through
/// `(i, (k + i) mod n)` followed by `n` running down-left through
/// `(i, (k - i) mod n)`.
pub fn broken_diagonal_sums(square: &Square) -> Vec<(u128, u128)> {
    let n = square.order();
    let down_right = (0..n).map(|k| accumulate((0..n).map(|i| square.get(i, (k + i) % n).value())));
    let down_left =
        (0..n).map(|k| accumulate((0..n).map(|i| square.get(i, (k + n - i) % n).value())));
    down_right.chain(down_left).collect()
}

/// Whether every broken diagonal reaches S1 (and S2 when `bimagic` is set).
///
/// Pandiagonality is measured against the magic sums, so asking it of a
/// square that is not magic (or not bimagic, with the flag) is an error.
pub fn check_pandiagonal(square: &Square, bimagic: bool) -> Result<bool> {
    let (s1, s2) = if bimagic {
        let (s1, s2) = check_bimagic(square)
            .ok_or_else(|| Error::InvalidState("square is not bimagic".into()))?;
        (s1, Some(s2))
    } else {
        let s1 =
            check_magic(square).ok_or_else(|| Error::InvalidState("square is not magic".into()))?;
        (s1, None)
    };
    Ok(broken_diagonal_sums(square)
        .iter()
        .all(|&(sum, sq)| sum == s1 && s2.map_or(true, |s2| sq == s2)))
}

/// Totals of the aligned, non-overlapping `k × k` tiles in row-major tile
/// order.
pub fn block_sums(square: &Square, k: usize) -> Result<Vec<u128>> {
    let n = square.order();
    if k == 0 || n % k != 0 {
        return Err(Error::BadBlockSize { order: n, block: k });
    }
    let tiles = n / k;
    let mut out = Vec::with_capacity(tiles * tiles);
    for bi in 0..tiles {
        for bj in 0..tiles {
            let total = (0..k)
                .flat_map(|i| (0..k).map(move |j| (bi * k + i, bj * k + j)))
                .map(|(i, j)| square.get(i, j).value())
                .sum();
            out.push(total);
        }
    }
    Ok(out)
}

/// The common total of all aligned `k × k` tiles, if they agree.
pub fn check_blocks(square: &Square, k: usize) -> Result<Option<u128>> {
    Ok(common(block_sums(square, k)?.into_iter()))
}

pub fn entry_properties(square: &Square) -> EntryProperties {
    let rotation = DigitMap::rotation().domain();
    let mut sorted: Vec<&CodeWord> = square.cells().iter().collect();
    sorted.sort_unstable();
    EntryProperties {
        all_palindromic: square.cells().iter().all(CodeWord::is_palindrome),
        all_distinct: sorted.windows(2).all(|w| w[0] != w[1]),
        rotation_closed: square.cells().iter().all(|c| c.within(rotation)),
    }
}

/// Runs every check and collects the results. `blocks` lists the tile sizes
/// to evaluate; each must divide the order.
pub fn report(square: &Square, blocks: &[usize]) -> Result<PropertyReport> {
    let lines = line_sums(square);
    let s1 = common(lines.iter().map(|l| l.sum));
    let s2 = common(lines.iter().map(|l| l.sum_of_squares));
    let diagonals = broken_diagonal_sums(square);
    let is_pandiagonal = s1.is_some_and(|s1| diagonals.iter().all(|&(s, _)| s == s1));
    let is_pandiagonal_bimagic =
        is_pandiagonal && s2.is_some_and(|s2| diagonals.iter().all(|&(_, q)| q == s2));
    let block_results = blocks
        .iter()
        .map(|&k| {
            Ok(BlockResult {
                k,
                common_sum: check_blocks(square, k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let entries = entry_properties(square);
    Ok(PropertyReport {
        order: square.order(),
        width: square.width(),
        s1,
        s2,
        is_magic: s1.is_some(),
        is_bimagic: s1.is_some() && s2.is_some(),
        is_pandiagonal,
        is_pandiagonal_bimagic,
        block_results,
        all_entries_palindromic: entries.all_palindromic,
        all_entries_distinct: entries.all_distinct,
        rotation_closed: entries.rotation_closed,
        line_sums: lines,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Pythagoras {
    pub holds: bool,
    pub a2: u128,
    pub b2: u128,
    pub c2: u128,
}

/// Exact test of `a² + b² = c²`.
pub fn pythagoras_check(a: u64, b: u64, c: u64) -> Pythagoras {
    let (a2, b2, c2) = (
        a as u128 * a as u128,
        b as u128 * b as u128,
        c as u128 * c as u128,
    );
    Pythagoras {
        holds: a2 + b2 == c2,
        a2,
        b2,
        c2,
    }
}

/// The sum of squares every line must have if these `n²` entries were
/// arranged into a bimagic square: `Σ v² / n`.
///
/// Fails with [`Error::NotDivisible`] when `n` does not divide `Σ v²`, in
/// which case no bimagic arrangement of the entries exists.
pub fn s2_from_multiset(entries: &[CodeWord], n: usize) -> Result<u128> {
    if n == 0 || entries.len() != n * n {
        return Err(Error::ShapeMismatch(format!(
            "{} entries cannot fill an order-{n} square",
            entries.len()
        )));
    }
    let total = entries
        .iter()
        .try_fold(0u128, |acc, c| {
            let v = c.value();
            acc.checked_add(v.checked_mul(v)?)
        })
        .ok_or(Error::TooLarge)?;
    let divisor = n as u128;
    match total % divisor {
        0 => Ok(total / divisor),
        remainder => Err(Error::NotDivisible { divisor, remainder }),
    }
}

/// Compares published values against an independently computed one.
pub fn audit_claims(computed: u128, claimed: &[u128]) -> Vec<ClaimCheck> {
    claimed
        .iter()
        .map(|&value| ClaimCheck {
            claimed: value,
            computed,
            consistent: value == computed,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClaimCheck {
    pub claimed: u128,
    pub computed: u128,
    pub consistent: bool,
}

/// Published sums of squares for order-9 squares over `{0,1,2}` digits, by
/// cell width. Width 4 appears twice with two different values.
pub mod published {
    pub const S2_ORDER9_WIDTH4: [u128; 2] = [17_169_395, 17_169_495];
    pub const S2_ORDER9_WIDTH6: u128 = 172_916_950_695;
    pub const S2_ORDER9_WIDTH8: u128 = 1_717_172_174_949_490;
}
