use alloc::vec::Vec;

use crate::{verify, Alphabet, CodeWord, Error, Result, Square};

/// Largest grid count the brute-force oracle will walk.
pub const ORACLE_STATE_CAP: u128 = 100_000_000;

/// Every width-1 square of the given order over `alphabet` whose lines all
/// sum to `line_sum`, found by visiting all `|alphabet|^(n²)` grids and
/// filtering with [`verify::check_magic`]. Sorted.
///
/// This shares no code with the layer search and exists to cross-check it.
pub fn brute_force_squares(order: usize, alphabet: Alphabet, line_sum: u32) -> Result<Vec<Square>> {
    let cells = order * order;
    let states = (alphabet.len() as u128)
        .checked_pow(cells as u32)
        .unwrap_or(u128::MAX);
    if states > ORACLE_STATE_CAP {
        return Err(Error::OracleTooLarge {
            states,
            cap: ORACLE_STATE_CAP,
        });
    }
    let symbols: Vec<CodeWord> = alphabet
        .iter()
        .map(|d| CodeWord::from_digits(&[d]))
        .collect::<Result<_>>()?;
    let mut odometer = alloc::vec![0usize; cells];
    let mut out = Vec::new();
    'grids: loop {
        let grid = odometer.iter().map(|&k| symbols[k]).collect();
        let square = Square::new(order, grid)?;
        if verify::check_magic(&square) == Some(line_sum as u128) {
            out.push(square);
        }
        for wheel in odometer.iter_mut().rev() {
            *wheel += 1;
            if *wheel < symbols.len() {
                continue 'grids;
            }
            *wheel = 0;
        }
        break;
    }
    out.sort();
    Ok(out)
}
