use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Cell coordinates attached to transform errors, `(row, column)`.
pub type Cell = Option<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid digit {0:?}")]
    InvalidDigit(char),

    #[error("invalid codeword: {0}")]
    InvalidCodeWord(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("digit {digit} at position {position}{} has no 180-degree image", fmt_cell(.cell))]
    NonRotatableDigit {
        cell: Cell,
        position: usize,
        digit: u8,
    },

    #[error("digit {digit} at position {position}{} has no mirror image", fmt_cell(.cell))]
    NonMirrorableDigit {
        cell: Cell,
        position: usize,
        digit: u8,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("block size {block} does not divide order {order}")]
    BadBlockSize { order: usize, block: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("sum of squares is not divisible by {divisor} (remainder {remainder})")]
    NotDivisible { divisor: u128, remainder: u128 },

    #[error("brute-force oracle would visit {states} states, above the cap of {cap}")]
    OracleTooLarge { states: u128, cap: u128 },

    #[error("invalid search spec: {0}")]
    InvalidSpec(String),

    #[error("search budget exhausted before any solution was found")]
    BudgetExhausted,

    #[error("search space exhausted: no square satisfies the constraints")]
    Unsatisfiable,

    #[error("malformed text block: {0}")]
    MalformedBlock(String),

    #[error("square too large: sums would exceed 128-bit exact arithmetic")]
    TooLarge,
}

fn fmt_cell(cell: &Cell) -> String {
    match cell {
        Some((r, c)) => alloc::format!(" of cell ({r}, {c})"),
        None => String::new(),
    }
}
