use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Budget;
use crate::{Alphabet, Layer};

/// How often the search loop consults its budget, in visited nodes.
const BUDGET_STRIDE: u32 = 1 << 10;

/// Parameters for enumerating digit planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerSpec {
    pub order: usize,
    pub alphabet: Alphabet,
    /// Required sum of every row, column and main diagonal.
    pub line_sum: u32,
    /// Also require the `2n` broken diagonals to reach `line_sum`.
    pub pandiagonal: bool,
}

impl LayerSpec {
    pub fn new(order: usize, alphabet: Alphabet, line_sum: u32) -> Self {
        LayerSpec {
            order,
            alphabet,
            line_sum,
            pandiagonal: false,
        }
    }

    pub fn pandiagonal(mut self, yes: bool) -> Self {
        self.pandiagonal = yes;
        self
    }

    /// Line sums outside `[n·min, n·max]` admit no layer at all.
    pub fn in_range(&self) -> bool {
        let n = self.order as u32;
        (n * self.alphabet.min() as u32..=n * self.alphabet.max() as u32).contains(&self.line_sum)
    }
}

/// Caps how many cells may share one digit within each prefix group. Used
/// to keep composed codewords distinct: cells whose higher places already
/// agree form a group, and each group can only absorb as many cells as
/// there are distinct completions left.
#[derive(Debug, Clone)]
pub(crate) struct Capacity {
    pub groups: Vec<usize>,
    pub cap: u32,
    pub counts: Vec<u32>,
}

impl Capacity {
    pub fn new(groups: Vec<usize>, cap: u32) -> Self {
        let len = groups.iter().copied().max().map_or(0, |g| g + 1) * 10;
        Capacity {
            groups,
            cap,
            counts: vec![0; len],
        }
    }

    fn slot(&self, cell: usize, digit: u8) -> usize {
        self.groups[cell] * 10 + digit as usize
    }
}

pub(crate) enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Iterative depth-first search over the cells of one layer in row-major
/// order. Each placement is pruned by every line through the cell: the
/// partial sum plus what the remaining cells can still contribute must
/// bracket the target.
#[derive(Debug, Clone)]
pub(crate) struct LayerSearch {
    n: usize,
    target: u32,
    min: u32,
    max: u32,
    cell_lines: Vec<[usize; 4]>,
    line_sums: Vec<u32>,
    line_filled: Vec<u32>,
    orders: Vec<Vec<u8>>,
    next_choice: Vec<usize>,
    assigned: Vec<u8>,
    capacity: Option<Capacity>,
    pos: usize,
    emitted: bool,
    done: bool,
    nodes: u32,
}

impl LayerSearch {
    pub fn new<R: Rng>(spec: &LayerSpec, capacity: Option<Capacity>, rng: Option<&mut R>) -> Self {
        let n = spec.order;
        let cells = n * n;
        let ascending: Vec<u8> = spec.alphabet.iter().collect();
        let orders = match rng {
            Some(rng) => (0..cells)
                .map(|_| {
                    let mut o = ascending.clone();
                    o.shuffle(rng);
                    o
                })
                .collect(),
            None => vec![ascending; cells],
        };
        let line_count = if spec.pandiagonal { 4 * n } else { 2 * n + 2 };
        // rows, columns, then diagonals; a cell off both main diagonals
        // points its spare slots at a sink line that is never checked
        let sink = line_count;
        let cell_lines = (0..cells)
            .map(|c| {
                let (i, j) = (c / n, c % n);
                if spec.pandiagonal {
                    [i, n + j, 2 * n + (j + n - i) % n, 3 * n + (i + j) % n]
                } else {
                    [
                        i,
                        n + j,
                        if i == j { 2 * n } else { sink },
                        if i + j == n - 1 { 2 * n + 1 } else { sink },
                    ]
                }
            })
            .collect();
        LayerSearch {
            n,
            target: spec.line_sum,
            min: spec.alphabet.min() as u32,
            max: spec.alphabet.max() as u32,
            cell_lines,
            line_sums: vec![0; line_count + 1],
            line_filled: vec![0; line_count + 1],
            orders,
            next_choice: vec![0; cells],
            assigned: vec![0; cells],
            capacity,
            pos: 0,
            emitted: false,
            done: !spec.in_range() || cells == 0,
            nodes: 0,
        }
    }

    pub fn layer(&self) -> Layer {
        Layer::from_raw(self.n, self.assigned.clone())
    }

    pub fn cells(&self) -> &[u8] {
        &self.assigned
    }

    fn lines(&self, cell: usize) -> impl Iterator<Item = usize> + '_ {
        let sink = self.line_sums.len() - 1;
        self.cell_lines[cell]
            .iter()
            .copied()
            .filter(move |&l| l != sink)
    }

    fn fits(&self, cell: usize, v: u8) -> bool {
        let v = v as u32;
        let n = self.n as u32;
        let line_ok = self.lines(cell).all(|l| {
            let partial = self.line_sums[l] + v;
            let left = n - self.line_filled[l] - 1;
            partial + left * self.min <= self.target && self.target <= partial + left * self.max
        });
        line_ok
            && self
                .capacity
                .as_ref()
                .map_or(true, |cap| cap.counts[cap.slot(cell, v as u8)] < cap.cap)
    }

    fn assign(&mut self, cell: usize, v: u8) {
        self.assigned[cell] = v;
        for k in 0..4 {
            let l = self.cell_lines[cell][k];
            self.line_sums[l] += v as u32;
            self.line_filled[l] += 1;
        }
        if let Some(cap) = self.capacity.as_mut() {
            let slot = cap.slot(cell, v);
            cap.counts[slot] += 1;
        }
    }

    fn unassign(&mut self, cell: usize) {
        let v = self.assigned[cell];
        for k in 0..4 {
            let l = self.cell_lines[cell][k];
            self.line_sums[l] -= v as u32;
            self.line_filled[l] -= 1;
        }
        if let Some(cap) = self.capacity.as_mut() {
            let slot = cap.slot(cell, v);
            cap.counts[slot] -= 1;
        }
    }

    /// Advances to the next complete layer. After [`Step::OutOfBudget`] the
    /// search can be resumed by calling `step` again.
    pub fn step(&mut self, budget: &mut dyn Budget) -> Step {
        if self.done {
            return Step::Exhausted;
        }
        let last = self.n * self.n - 1;
        if self.emitted {
            self.emitted = false;
            self.unassign(last);
            self.pos = last;
        }
        loop {
            self.nodes = self.nodes.wrapping_add(1);
            if self.nodes % BUDGET_STRIDE == 0 && budget.exhausted() {
                return Step::OutOfBudget;
            }
            let c = self.pos;
            let mut placed = None;
            while self.next_choice[c] < self.orders[c].len() {
                let v = self.orders[c][self.next_choice[c]];
                self.next_choice[c] += 1;
                if self.fits(c, v) {
                    placed = Some(v);
                    break;
                }
            }
            match placed {
                Some(v) => {
                    self.assign(c, v);
                    if c == last {
                        self.emitted = true;
                        return Step::Found;
                    }
                    self.pos = c + 1;
                    self.next_choice[c + 1] = 0;
                }
                None if c == 0 => {
                    self.done = true;
                    return Step::Exhausted;
                }
                None => {
                    self.pos = c - 1;
                    self.unassign(c - 1);
                }
            }
        }
    }
}

/// Every layer satisfying a [`LayerSpec`], in lexicographic row-major order.
pub struct Layers {
    search: LayerSearch,
}

impl Iterator for Layers {
    type Item = Layer;

    fn next(&mut self) -> Option<Layer> {
        match self.search.step(&mut super::Unlimited) {
            Step::Found => Some(self.search.layer()),
            Step::Exhausted | Step::OutOfBudget => None,
        }
    }
}

/// Enumerates the digit planes of order `n` whose lines all sum to the
/// requested value. Unsatisfiable specs give an empty stream.
pub fn gen_layers(spec: &LayerSpec) -> Layers {
    Layers {
        search: LayerSearch::new::<rand_chacha::ChaCha8Rng>(spec, None, None),
    }
}
