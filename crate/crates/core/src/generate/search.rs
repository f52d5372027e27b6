use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bimagic::{BimagicOptions, BimagicSearch};
use super::layers::{Capacity, LayerSearch, LayerSpec, Step};
use super::{Budget, SearchSpec};
use crate::{verify, CodeWord, Layer, LayerStack, Result, Square};

/// Stacks layers into a square, layer 0 becoming the leading digit.
pub fn stack_layers(layers: &[Layer]) -> Result<Square> {
    LayerStack::new(layers.to_vec())?.recompose()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Running,
    /// The whole search space was visited.
    Exhausted,
    LimitReached,
    BudgetExhausted,
}

pub(crate) enum Found {
    Square(Square),
    Exhausted,
    OutOfBudget,
}

/// Lazily emitted solutions of a [`SearchSpec`]. Every square is
/// re-verified against the spec before it is yielded.
pub struct SquareStream<B> {
    engine: Engine,
    budget: B,
    spec: SearchSpec,
    emitted: usize,
    status: SearchStatus,
}

enum Engine {
    Product(LayerProduct),
    Bimagic(BimagicSearch),
    Empty,
}

/// Starts a search. Malformed specs are rejected up front; a spec that is
/// merely unsatisfiable yields an empty stream whose status is
/// [`SearchStatus::Exhausted`].
pub fn gen_square<B: Budget>(spec: &SearchSpec, budget: B) -> Result<SquareStream<B>> {
    spec.validate()?;
    let engine = if spec.trivially_unsatisfiable() {
        Engine::Empty
    } else if spec.require_bimagic {
        Engine::Bimagic(BimagicSearch::new(BimagicOptions {
            seed: spec.seed,
            deterministic: spec.deterministic,
            require_blocks: true,
        }))
    } else {
        Engine::Product(LayerProduct::new(spec))
    };
    Ok(SquareStream {
        engine,
        budget,
        spec: spec.clone(),
        emitted: 0,
        status: SearchStatus::Running,
    })
}

impl<B: Budget> SquareStream<B> {
    pub fn status(&self) -> SearchStatus {
        self.status
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    fn accept(&self, square: &Square) -> bool {
        let spec = &self.spec;
        if verify::check_magic(square) != Some(spec.predicted_s1()) {
            return false;
        }
        if spec.require_pandiagonal && verify::check_pandiagonal(square, false) != Ok(true) {
            return false;
        }
        let entries = verify::entry_properties(square);
        if (spec.require_distinct || spec.require_bimagic) && !entries.all_distinct {
            return false;
        }
        if spec.require_palindromic && !entries.all_palindromic {
            return false;
        }
        if spec.require_bimagic {
            let expected = verify::s2_from_multiset(square.cells(), square.order()).ok();
            let s2 = verify::check_bimagic(square).map(|(_, s2)| s2);
            if s2.is_none() || s2 != expected {
                return false;
            }
        }
        true
    }
}

impl<B: Budget> Iterator for SquareStream<B> {
    type Item = Square;

    fn next(&mut self) -> Option<Square> {
        if self.status != SearchStatus::Running {
            return None;
        }
        // A budget that is already spent finds nothing, however easy the spec.
        if !matches!(self.engine, Engine::Empty) && self.budget.exhausted() {
            self.status = SearchStatus::BudgetExhausted;
            return None;
        }
        loop {
            let found = match &mut self.engine {
                Engine::Product(p) => p.next(&mut self.budget),
                Engine::Bimagic(b) => {
                    let wide = self.spec.width == 8;
                    match b.next_square(&mut self.budget) {
                        Found::Square(s) if wide => match s.palindromic_extend() {
                            Ok(s) => Found::Square(s),
                            Err(_) => Found::Exhausted,
                        },
                        other => other,
                    }
                }
                Engine::Empty => Found::Exhausted,
            };
            match found {
                Found::Square(square) => {
                    if !self.accept(&square) {
                        continue;
                    }
                    self.emitted += 1;
                    if self.emitted >= self.spec.limit {
                        self.status = SearchStatus::LimitReached;
                    }
                    let alphabet = self.spec.alphabet;
                    if square.cells().iter().all(|c| c.within(alphabet)) {
                        return Some(square.with_alphabet(alphabet).expect("digits checked"));
                    }
                    return Some(square);
                }
                Found::Exhausted => {
                    self.status = SearchStatus::Exhausted;
                    return None;
                }
                Found::OutOfBudget => {
                    self.status = SearchStatus::BudgetExhausted;
                    return None;
                }
            }
        }
    }
}

/// Depth-first product over per-place layer searches. For palindromic
/// squares only the leading `ceil(d/2)` places are searched and the rest
/// are mirrored.
struct LayerProduct {
    order: usize,
    spec: SearchSpec,
    places: usize,
    rng: Option<ChaCha8Rng>,
    stack: Vec<LayerSearch>,
}

impl LayerProduct {
    fn new(spec: &SearchSpec) -> Self {
        let places = if spec.require_palindromic {
            spec.width.div_ceil(2)
        } else {
            spec.width
        };
        let rng = (!spec.deterministic).then(|| ChaCha8Rng::seed_from_u64(spec.seed));
        let mut product = LayerProduct {
            order: spec.order,
            spec: spec.clone(),
            places,
            rng,
            stack: Vec::with_capacity(places),
        };
        let first = product.search_for(0);
        product.stack.push(first);
        product
    }

    fn layer_spec(&self, place: usize) -> LayerSpec {
        LayerSpec::new(
            self.order,
            self.spec.alphabet,
            self.spec.line_sum_per_place[place],
        )
        .pandiagonal(self.spec.require_pandiagonal)
    }

    fn search_for(&mut self, place: usize) -> LayerSearch {
        let capacity = self.spec.require_distinct.then(|| {
            let remaining = (self.places - 1 - place) as u32;
            let cap = (self.spec.alphabet.len() as u32)
                .checked_pow(remaining)
                .unwrap_or(u32::MAX);
            Capacity::new(self.prefix_groups(place), cap)
        });
        let spec = self.layer_spec(place);
        LayerSearch::new(&spec, capacity, self.rng.as_mut())
    }

    /// Labels cells by the digits already chosen for places `0..place`.
    fn prefix_groups(&self, place: usize) -> Vec<usize> {
        let cells = self.order * self.order;
        let mut groups = alloc::vec![0usize; cells];
        for layer in &self.stack[..place] {
            let mut table: Vec<Option<usize>> = alloc::vec![None; cells * 10];
            let mut next = 0;
            for (g, &d) in groups.iter_mut().zip(layer.cells()) {
                let slot = *g * 10 + d as usize;
                *g = *table[slot].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                });
            }
        }
        groups
    }

    fn build(&self) -> Square {
        let d = self.spec.width;
        let cells = self.order * self.order;
        let mut digits = Vec::with_capacity(d);
        let out = (0..cells)
            .map(|c| {
                digits.clear();
                digits.extend(self.stack.iter().map(|l| l.cells()[c]));
                let mirrored = d - self.places;
                for k in (0..mirrored).rev() {
                    digits.push(digits[k]);
                }
                CodeWord::from_digits(&digits).unwrap_or_else(|_| unreachable!())
            })
            .collect();
        Square::new(self.order, out).unwrap_or_else(|_| unreachable!())
    }

    fn next(&mut self, budget: &mut dyn Budget) -> Found {
        loop {
            let Some(top) = self.stack.last_mut() else {
                return Found::Exhausted;
            };
            match top.step(budget) {
                Step::Found if self.stack.len() == self.places => {
                    return Found::Square(self.build())
                }
                Step::Found => {
                    let place = self.stack.len();
                    let search = self.search_for(place);
                    self.stack.push(search);
                }
                Step::Exhausted => {
                    self.stack.pop();
                }
                Step::OutOfBudget => return Found::OutOfBudget,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{collect_squares, PollLimit, Unlimited};
    use crate::Error;
    use alloc::string::ToString;

    #[test]
    fn order3_width2_distinct() {
        let mut spec = SearchSpec::new(3, 2, 3);
        spec.require_distinct = true;
        spec.limit = 100;
        let squares = collect_squares(&spec, Unlimited).unwrap();
        assert!(!squares.is_empty());
        for s in &squares {
            assert_eq!(verify::check_magic(s), Some(33));
            assert!(verify::entry_properties(s).all_distinct);
        }
        let mut unique = squares.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), squares.len());
    }

    #[test]
    fn palindromic_widths() {
        // width 2 has only three palindromes for nine cells
        let mut spec = SearchSpec::new(3, 2, 3);
        spec.require_palindromic = true;
        spec.require_distinct = true;
        assert_eq!(
            collect_squares(&spec, Unlimited),
            Err(crate::Error::Unsatisfiable)
        );
        for width in [3, 4, 5, 6] {
            let mut spec = SearchSpec::new(3, width, 3);
            spec.require_palindromic = true;
            spec.require_distinct = true;
            let s = &collect_squares(&spec, Unlimited).unwrap()[0];
            assert_eq!(s.width(), width);
            assert!(verify::entry_properties(s).all_palindromic);
            assert!(verify::entry_properties(s).all_distinct);
            assert_eq!(verify::check_magic(s), Some(spec.predicted_s1()));
        }
    }

    #[test]
    fn even_palindromes_match_extension() {
        let mut half = SearchSpec::new(3, 2, 3);
        half.require_distinct = true;
        let mut full = SearchSpec::new(3, 4, 3);
        full.require_distinct = true;
        full.require_palindromic = true;
        let h = collect_squares(&half, Unlimited).unwrap();
        let f = collect_squares(&full, Unlimited).unwrap();
        assert_eq!(h[0].palindromic_extend().unwrap(), f[0]);
    }

    #[test]
    fn unsatisfiable_and_invalid() {
        let spec = SearchSpec::new(3, 1, 7);
        assert_eq!(collect_squares(&spec, Unlimited), Err(Error::Unsatisfiable));
        let mut spec = SearchSpec::new(3, 2, 3);
        spec.line_sum_per_place = alloc::vec![3, 4];
        spec.require_palindromic = true;
        assert_eq!(collect_squares(&spec, Unlimited), Err(Error::Unsatisfiable));
        let mut spec = SearchSpec::new(3, 2, 3);
        spec.line_sum_per_place.push(3);
        assert!(matches!(
            gen_square(&spec, Unlimited),
            Err(Error::InvalidSpec(_))
        ));
        let mut spec = SearchSpec::new(4, 4, 4);
        spec.require_bimagic = true;
        assert!(matches!(
            gen_square(&spec, Unlimited),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn distinct_is_impossible_when_cells_outnumber_codewords() {
        // 16 cells but only 9 two-digit codewords over {0,1,2}
        let mut spec = SearchSpec::new(4, 2, 4);
        spec.require_distinct = true;
        assert_eq!(collect_squares(&spec, Unlimited), Err(Error::Unsatisfiable));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let mut spec = SearchSpec::new(6, 4, 6);
        spec.require_distinct = true;
        spec.require_pandiagonal = true;
        assert_eq!(
            collect_squares(&spec, PollLimit(0)),
            Err(Error::BudgetExhausted)
        );
    }

    #[test]
    fn seeded_runs_repeat() {
        let mut spec = SearchSpec::new(4, 4, 4);
        spec.require_distinct = true;
        spec.deterministic = false;
        spec.seed = 11;
        spec.limit = 5;
        let a = collect_squares(&spec, Unlimited).unwrap();
        let b = collect_squares(&spec, Unlimited).unwrap();
        assert_eq!(a, b);
        spec.seed = 12;
        let c = collect_squares(&spec, Unlimited).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn stacking_two_layers() {
        let a = Layer::from_rows(&[&[1, 2, 0], &[0, 1, 2], &[2, 0, 1]]).unwrap();
        let b = Layer::from_rows(&[&[0, 2, 1], &[2, 1, 0], &[1, 0, 2]]).unwrap();
        let s = stack_layers(&[a, b]).unwrap();
        assert_eq!(s.width(), 2);
        assert_eq!(s.get(0, 0).to_string(), "10");
        assert_eq!(verify::check_magic(&s), Some(33));
        let c = Layer::from_rows(&[&[1]]).unwrap();
        assert!(stack_layers(&[s.decompose().layers()[0].clone(), c]).is_err());
    }
}
