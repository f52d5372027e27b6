//! Square construction by stacking digit planes.
//!
//! A layer is an `n × n` grid of single digits whose rows, columns and
//! diagonals all share one sum `s`. Stacking `d` layers with sums
//! `s_0, …, s_{d-1}` gives a square of width-`d` codewords whose line sums
//! are exactly `Σ s_p · 10^(d-1-p)`: place values add independently, so no
//! carry can disturb the total. With `s_p = 3` for every place this is
//! `33`, `3333`, … and turning the square upside down just permutes the
//! places, so the sum survives the rotation.
//!
//! [`gen_square`] searches the layer product place by place; the order-9
//! bimagic case is handled by [`bimagic_search`].

mod bimagic;
mod compose;
mod layers;
mod oracle;
mod search;

use alloc::format;
use alloc::vec::Vec;

pub use bimagic::{bimagic_search, is_bimagic_pair, BimagicOptions, BimagicSearch};
pub use compose::compose_blocks;
pub use layers::{gen_layers, LayerSpec, Layers};
pub use oracle::{brute_force_squares, ORACLE_STATE_CAP};
pub use search::{gen_square, stack_layers, SearchStatus, SquareStream};

pub use crate::Layer;
use crate::{Alphabet, Error, Result, MAX_WIDTH};

/// Decides when a search should give up. Implementations are polled
/// periodically from inside the search loops.
pub trait Budget {
    fn exhausted(&mut self) -> bool;
}

/// Never runs out.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&mut self) -> bool {
        false
    }
}

/// Runs out after a fixed number of polls. Useful where no clock exists.
#[derive(Debug, Clone, Copy)]
pub struct PollLimit(pub u64);

impl Budget for PollLimit {
    fn exhausted(&mut self) -> bool {
        if self.0 == 0 {
            return true;
        }
        self.0 -= 1;
        false
    }
}

impl<F: FnMut() -> bool> Budget for F {
    fn exhausted(&mut self) -> bool {
        self()
    }
}

/// What to search for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub order: usize,
    pub width: usize,
    pub alphabet: Alphabet,
    /// Target line sum of each digit plane, most significant first.
    pub line_sum_per_place: Vec<u32>,
    pub require_pandiagonal: bool,
    pub require_distinct: bool,
    pub require_palindromic: bool,
    pub require_bimagic: bool,
    /// Maximum number of squares to emit.
    pub limit: usize,
    pub seed: u64,
    /// Wall-clock budget; the host turns this into a [`Budget`].
    pub budget_ms: Option<u64>,
    /// Lexicographic emission order instead of seeded shuffling.
    pub deterministic: bool,
}

impl SearchSpec {
    /// A spec with the same line sum on every place.
    pub fn new(order: usize, width: usize, line_sum: u32) -> Self {
        SearchSpec {
            order,
            width,
            alphabet: Alphabet::DEFAULT,
            line_sum_per_place: alloc::vec![line_sum; width],
            require_pandiagonal: false,
            require_distinct: false,
            require_palindromic: false,
            require_bimagic: false,
            limit: 1,
            seed: 0,
            budget_ms: None,
            deterministic: true,
        }
    }

    /// The magic sum every emitted square has: `Σ s_p · 10^(d-1-p)`.
    pub fn predicted_s1(&self) -> u128 {
        self.line_sum_per_place
            .iter()
            .fold(0u128, |acc, &s| acc * 10 + s as u128)
    }

    /// Rejects malformed specs. A well-formed spec may still be
    /// unsatisfiable; see [`SearchSpec::trivially_unsatisfiable`].
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: alloc::string::String| Err(Error::InvalidSpec(msg));
        if self.order == 0 {
            return invalid("order must be at least 1".into());
        }
        if self.width == 0 || self.width > MAX_WIDTH {
            return invalid(format!("width must be in 1..={MAX_WIDTH}"));
        }
        if self.line_sum_per_place.len() != self.width {
            return invalid(format!(
                "{} line sums given for width {}",
                self.line_sum_per_place.len(),
                self.width
            ));
        }
        if self.limit == 0 {
            return invalid("limit must be at least 1".into());
        }
        crate::Square::new(
            self.order,
            alloc::vec![crate::CodeWord::from_value(0, self.width)?; self.order * self.order],
        )
        .map_err(|_| Error::InvalidSpec("order and width overflow exact arithmetic".into()))?;
        if self.require_bimagic {
            if self.order != 9 {
                return invalid("bimagic generation supports order 9 only".into());
            }
            if self.alphabet != Alphabet::DEFAULT {
                return invalid("bimagic generation uses the alphabet 012".into());
            }
            let width_ok = self.width == 4 || (self.width == 8 && self.require_palindromic);
            if !width_ok {
                return invalid(
                    "bimagic generation needs width 4, or width 8 with palindromic".into(),
                );
            }
            if self.require_pandiagonal {
                return invalid("pandiagonal bimagic generation is not supported".into());
            }
            if self.line_sum_per_place.iter().any(|&s| s != 9) {
                return invalid("bimagic order-9 planes have line sum 9".into());
            }
        }
        Ok(())
    }

    /// True when some place's target is out of reach, or a palindromic
    /// square is asked for with asymmetric place sums.
    pub fn trivially_unsatisfiable(&self) -> bool {
        let out_of_range = self
            .line_sum_per_place
            .iter()
            .any(|&s| !LayerSpec::new(self.order, self.alphabet, s).in_range());
        let asymmetric = self.require_palindromic
            && self
                .line_sum_per_place
                .iter()
                .ne(self.line_sum_per_place.iter().rev());
        out_of_range || asymmetric
    }
}

/// Runs a search to completion and collects what it emits, reporting why
/// nothing was found when the result would be empty.
pub fn collect_squares<B: Budget>(spec: &SearchSpec, budget: B) -> Result<Vec<crate::Square>> {
    let mut stream = gen_square(spec, budget)?;
    let found: Vec<_> = stream.by_ref().collect();
    if found.is_empty() {
        return Err(match stream.status() {
            SearchStatus::BudgetExhausted => Error::BudgetExhausted,
            _ => Error::Unsatisfiable,
        });
    }
    Ok(found)
}
