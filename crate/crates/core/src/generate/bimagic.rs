//! Order-9 bimagic squares over the digits `{0, 1, 2}`.
//!
//! A cell is written as four base-3 digits `d0 d1 d2 d3` read in decimal,
//! so the square is a pair `(A, B)` of order-9 arrays over `0..9` with
//! `A = 3·d0 + d1` and `B = 3·d2 + d3`. When `A` and `B` are diagonal Latin
//! squares, every line already has a fixed multiset of `A` values and of `B`
//! values, which pins the line sum and the `A²` and `B²` parts of the sum
//! of squares. What is left is the cross term `Σ f(A)·f(B)`, where `f`
//! reads a symbol's base-3 digits as a decimal number; it has to be the same
//! on every line.
//!
//! The search walks a structured family of such pairs. Index the cell
//! `(i, j)` by `x = (i / 3, i % 3, j / 3, j % 3)` in GF(3)⁴. Rows, columns,
//! both main diagonals and the aligned 3×3 blocks are then cosets of
//! two-dimensional subspaces. Each digit plane is `d_p = σ_p(L_p · x)` for a
//! linear form `L_p` and a relabelling `σ_p` of `{0, 1, 2}`. If, on every
//! line direction, the four forms restrict to four pairwise independent
//! functionals, any two planes take each pair of values exactly once per
//! line, so every `Σ d_p·d_q` is constant and the square is bimagic. Full
//! rank of the four forms makes the 81 cells distinct.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::search::Found;
use super::Budget;
use crate::{verify, CodeWord, Square};

const ORDER: usize = 9;
const PERMUTATIONS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];
const RELABELLINGS: usize = 6 * 6 * 6 * 6;

type Form = [u8; 4];

/// Spanning vectors of each line direction in `(i/3, i%3, j/3, j%3)`
/// coordinates: rows, columns, main diagonal, anti-diagonal.
const LINE_DIRECTIONS: [[Form; 2]; 4] = [
    [[0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 0]],
    [[1, 0, 1, 0], [0, 1, 0, 1]],
    [[1, 0, 2, 0], [0, 1, 0, 2]],
];
const BLOCK_DIRECTION: [Form; 2] = [[0, 1, 0, 0], [0, 0, 0, 1]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BimagicOptions {
    pub seed: u64,
    /// Visit candidates in a fixed lexicographic order.
    pub deterministic: bool,
    /// Also require every aligned 3×3 block to total `9999`.
    pub require_blocks: bool,
}

impl Default for BimagicOptions {
    fn default() -> Self {
        BimagicOptions {
            seed: 0,
            deterministic: true,
            require_blocks: true,
        }
    }
}

fn dot(a: &Form, b: &Form) -> u8 {
    (a.iter().zip(b).map(|(x, y)| x * y).sum::<u8>()) % 3
}

/// Projective point of a vector in GF(3)², or `None` for zero.
fn projective(v: (u8, u8)) -> Option<(u8, u8)> {
    match v {
        (0, 0) => None,
        (0, _) => Some((0, 1)),
        (a, b) => {
            let inv = if a == 1 { 1 } else { 2 };
            Some((1, (b * inv) % 3))
        }
    }
}

fn rank_is_full(forms: &[Form; 4]) -> bool {
    let mut images = BTreeSet::new();
    for k in 0..81u8 {
        let x = [k / 27, k / 9 % 3, k / 3 % 3, k % 3];
        images.insert(forms.map(|f| dot(&f, &x)));
    }
    images.len() == 81
}

/// Ordered 4-tuples of normalised forms meeting the independence condition
/// on every direction, in the order given by `candidates`.
fn admissible_tuples(candidates: &[Form], directions: &[[Form; 2]]) -> Vec<[Form; 4]> {
    let signature = |f: &Form| -> Option<Vec<(u8, u8)>> {
        directions
            .iter()
            .map(|[u, v]| projective((dot(f, u), dot(f, v))))
            .collect()
    };
    let usable: Vec<(Form, Vec<(u8, u8)>)> = candidates
        .iter()
        .filter_map(|f| signature(f).map(|s| (*f, s)))
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(4);
    fn extend(usable: &[(Form, Vec<(u8, u8)>)], chosen: &mut Vec<usize>, out: &mut Vec<[Form; 4]>) {
        if chosen.len() == 4 {
            let forms = [0, 1, 2, 3].map(|k| usable[chosen[k]].0);
            if rank_is_full(&forms) {
                out.push(forms);
            }
            return;
        }
        for idx in 0..usable.len() {
            let sig = &usable[idx].1;
            let clash = chosen
                .iter()
                .any(|&c| usable[c].1.iter().zip(sig).any(|(a, b)| a == b));
            if !clash {
                chosen.push(idx);
                extend(usable, chosen, out);
                chosen.pop();
            }
        }
    }
    extend(&usable, &mut chosen, &mut out);
    out
}

fn normalised_forms() -> Vec<Form> {
    (1..81u8)
        .map(|k| [k / 27, k / 9 % 3, k / 3 % 3, k % 3])
        .filter(|f| f.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

/// Decimal reading of a symbol's two base-3 digits.
fn decimal_pair(symbol: u8) -> u64 {
    10 * (symbol / 3) as u64 + (symbol % 3) as u64
}

fn lines() -> impl Iterator<Item = [(usize, usize); ORDER]> {
    let rows = (0..ORDER).map(|i| core::array::from_fn(|j| (i, j)));
    let cols = (0..ORDER).map(|j| core::array::from_fn(|i| (i, j)));
    let diag = core::iter::once(core::array::from_fn(|i| (i, i)));
    let anti = core::iter::once(core::array::from_fn(|i| (i, ORDER - 1 - i)));
    rows.chain(cols).chain(diag).chain(anti)
}

/// Checks the pair conditions on two order-9 arrays over `0..9`, given
/// row-major: both are diagonal Latin squares, together they cover all 81
/// symbol pairs, and `Σ f(A)·f(B)` is the same on all 20 lines.
pub fn is_bimagic_pair(a: &[u8], b: &[u8]) -> bool {
    if a.len() != ORDER * ORDER || b.len() != ORDER * ORDER {
        return false;
    }
    let at = |g: &[u8], (i, j): (usize, usize)| g[i * ORDER + j];
    let is_permutation = |g: &[u8], line: &[(usize, usize); ORDER]| {
        let mut seen = 0u16;
        for &c in line {
            let s = at(g, c);
            if s as usize >= ORDER {
                return false;
            }
            seen |= 1 << s;
        }
        seen == (1 << ORDER) - 1
    };
    let mut pairs = BTreeSet::new();
    for k in 0..ORDER * ORDER {
        pairs.insert((a[k], b[k]));
    }
    if pairs.len() != ORDER * ORDER {
        return false;
    }
    let mut cross = None;
    for line in lines() {
        if !is_permutation(a, &line) || !is_permutation(b, &line) {
            return false;
        }
        let c: u64 = line
            .iter()
            .map(|&p| decimal_pair(at(a, p)) * decimal_pair(at(b, p)))
            .sum();
        match cross {
            None => cross = Some(c),
            Some(prev) if prev != c => return false,
            _ => {}
        }
    }
    true
}

/// Lazily enumerates distinct order-9, width-4 bimagic squares.
pub struct BimagicSearch {
    options: BimagicOptions,
    tuples: Vec<[Form; 4]>,
    tuple: usize,
    relabelling: usize,
    rng: ChaCha8Rng,
    seen: BTreeSet<Square>,
}

impl BimagicSearch {
    pub fn new(options: BimagicOptions) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut candidates = normalised_forms();
        if !options.deterministic {
            candidates.shuffle(&mut rng);
        }
        let mut directions = LINE_DIRECTIONS.to_vec();
        if options.require_blocks {
            directions.push(BLOCK_DIRECTION);
        }
        BimagicSearch {
            options,
            tuples: admissible_tuples(&candidates, &directions),
            tuple: 0,
            relabelling: 0,
            rng,
            seen: BTreeSet::new(),
        }
    }

    /// Number of admissible ordered form tuples in the search family.
    pub fn family_size(&self) -> usize {
        self.tuples.len()
    }

    /// Next `(tuple, relabelling)` pair. Deterministic mode walks every
    /// relabelling of one tuple before moving on; seeded mode makes
    /// `RELABELLINGS` passes over the tuples with a random relabelling each.
    fn advance(&mut self) -> Option<([Form; 4], usize)> {
        if self.relabelling >= RELABELLINGS || self.tuples.is_empty() {
            return None;
        }
        let forms = self.tuples[self.tuple];
        let relabel = if self.options.deterministic {
            self.relabelling
        } else {
            self.rng.random_range(0..RELABELLINGS)
        };
        if self.options.deterministic {
            self.relabelling += 1;
            if self.relabelling == RELABELLINGS {
                self.relabelling = 0;
                self.tuple += 1;
                if self.tuple == self.tuples.len() {
                    self.relabelling = RELABELLINGS;
                }
            }
        } else {
            self.tuple += 1;
            if self.tuple == self.tuples.len() {
                self.tuple = 0;
                self.relabelling += 1;
            }
        }
        Some((forms, relabel))
    }

    fn build(forms: &[Form; 4], relabel: usize) -> (Vec<u8>, Vec<u8>, Square) {
        let sigma: [[u8; 3]; 4] =
            core::array::from_fn(|p| PERMUTATIONS[relabel / [216, 36, 6, 1][p] % 6]);
        let mut a = Vec::with_capacity(ORDER * ORDER);
        let mut b = Vec::with_capacity(ORDER * ORDER);
        let mut cells = Vec::with_capacity(ORDER * ORDER);
        for i in 0..ORDER {
            for j in 0..ORDER {
                let x = [(i / 3) as u8, (i % 3) as u8, (j / 3) as u8, (j % 3) as u8];
                let d: [u8; 4] = core::array::from_fn(|p| sigma[p][dot(&forms[p], &x) as usize]);
                a.push(3 * d[0] + d[1]);
                b.push(3 * d[2] + d[3]);
                cells.push(CodeWord::from_digits(&d).expect("four digits"));
            }
        }
        (a, b, Square::new(ORDER, cells).expect("order 9"))
    }

    pub(crate) fn next_square(&mut self, budget: &mut dyn Budget) -> Found {
        let mut polls = 0u32;
        while let Some((forms, relabel)) = self.advance() {
            polls += 1;
            if polls % 64 == 0 && budget.exhausted() {
                return Found::OutOfBudget;
            }
            let (a, b, square) = Self::build(&forms, relabel);
            if !is_bimagic_pair(&a, &b) {
                continue;
            }
            if self.options.require_blocks && verify::check_blocks(&square, 3) != Ok(Some(9999)) {
                continue;
            }
            if self.seen.insert(square.clone()) {
                return Found::Square(square);
            }
        }
        Found::Exhausted
    }
}

impl Iterator for BimagicSearch {
    type Item = Square;

    fn next(&mut self) -> Option<Square> {
        match self.next_square(&mut super::Unlimited) {
            Found::Square(s) => Some(s),
            _ => None,
        }
    }
}

/// Searches for order-9 bimagic squares whose cells are the 81 distinct
/// four-digit strings over `{0, 1, 2}`.
pub fn bimagic_search(options: BimagicOptions) -> BimagicSearch {
    BimagicSearch::new(options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_is_nonempty() {
        let search = bimagic_search(BimagicOptions::default());
        // 6 unordered sets of normalised forms, each in 24 orders
        assert_eq!(search.family_size(), 6 * 24);
    }

    #[test]
    fn emitted_squares_are_bimagic() {
        for s in bimagic_search(BimagicOptions::default()).take(5) {
            assert_eq!(verify::check_bimagic(&s), Some((9999, 17_169_495)));
            assert_eq!(verify::check_blocks(&s, 3), Ok(Some(9999)));
            assert!(verify::entry_properties(&s).all_distinct);
        }
    }

    #[test]
    fn pair_check_rejects_broken_pairs() {
        let (mut a, b, _) =
            BimagicSearch::build(&bimagic_search(BimagicOptions::default()).tuples[0], 0);
        assert!(is_bimagic_pair(&a, &b));
        assert!(!is_bimagic_pair(&b, &b));
        a.swap(0, 1);
        assert!(!is_bimagic_pair(&a, &b));
        assert!(!is_bimagic_pair(&a[..80], &b));
    }

    #[test]
    fn seeded_mode_is_reproducible() {
        let opts = BimagicOptions {
            seed: 3,
            deterministic: false,
            require_blocks: true,
        };
        let a: Vec<Square> = bimagic_search(opts).take(3).collect();
        let b: Vec<Square> = bimagic_search(opts).take(3).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }
}
