use super::AlternatingSignMatrix;
use crate::error::{Error, Result};

/// Streams all n×n ASMs in lexicographic order of their row-major reading
/// (with −1 < 0 < 1).
///
/// Cell-by-cell backtracking: a value is admissible when the row and column
/// partial sums stay in {0, 1}, the row closes at 1 in the last column and the
/// column closes at 1 in the last row. Every partial assignment that survives
/// these checks extends to an ASM, so no work is wasted on dead branches
/// beyond a single cell.
pub struct AsmIter {
    n: usize,
    vals: Vec<i8>,
    col: Vec<i8>,
    row_partial: Vec<i8>,
    started: bool,
    done: bool,
}

impl AsmIter {
    fn new(n: usize) -> Self {
        AsmIter {
            n,
            vals: Vec::with_capacity(n * n),
            col: vec![0; n],
            row_partial: Vec::with_capacity(n * n),
            started: false,
            done: false,
        }
    }

    fn row_sum_before(&self, pos: usize) -> i8 {
        if pos % self.n == 0 {
            0
        } else {
            self.row_partial[pos - 1]
        }
    }

    fn admissible(&self, pos: usize, v: i8) -> bool {
        let (i, j) = (pos / self.n, pos % self.n);
        let r = self.row_sum_before(pos) + v;
        let c = self.col[j] + v;
        if !(0..=1).contains(&r) || !(0..=1).contains(&c) {
            return false;
        }
        if j == self.n - 1 && r != 1 {
            return false;
        }
        if i == self.n - 1 && c != 1 {
            return false;
        }
        true
    }

    fn first_from(&self, pos: usize, from: i8) -> Option<i8> {
        (from..=1).find(|&v| self.admissible(pos, v))
    }

    fn push(&mut self, v: i8) {
        let pos = self.vals.len();
        let r = self.row_sum_before(pos) + v;
        self.col[pos % self.n] += v;
        self.vals.push(v);
        self.row_partial.push(r);
    }

    fn pop(&mut self) -> Option<i8> {
        let v = self.vals.pop()?;
        self.row_partial.pop();
        self.col[self.vals.len() % self.n] -= v;
        Some(v)
    }

    /// Fills the remaining cells with the smallest admissible values.
    fn descend(&mut self) -> bool {
        while self.vals.len() < self.n * self.n {
            match self.first_from(self.vals.len(), -1) {
                Some(v) => self.push(v),
                None => {
                    if !self.backtrack() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Advances the deepest cell that still has a larger admissible value.
    fn backtrack(&mut self) -> bool {
        while let Some(v) = self.pop() {
            if let Some(w) = self.first_from(self.vals.len(), v + 1) {
                self.push(w);
                return true;
            }
        }
        false
    }
}

impl Iterator for AsmIter {
    type Item = AlternatingSignMatrix;

    fn next(&mut self) -> Option<AlternatingSignMatrix> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(AlternatingSignMatrix::from_raw(0, Vec::new()));
        }
        let ok = if self.started {
            self.backtrack() && self.descend()
        } else {
            self.started = true;
            self.descend()
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(AlternatingSignMatrix::from_raw(self.n, self.vals.clone()))
    }
}

/// Enumerates with the default cap of 7 (overridable via `LAMBDADET_CAP`).
pub fn enumerate_asm(n: usize) -> Result<AsmIter> {
    enumerate_asm_with_cap(n, crate::enumeration_cap(7))
}

pub fn enumerate_asm_with_cap(n: usize, cap: usize) -> Result<AsmIter> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(AsmIter::new(n))
}

pub fn count_asm(n: usize) -> Result<usize> {
    Ok(enumerate_asm(n)?.count())
}
