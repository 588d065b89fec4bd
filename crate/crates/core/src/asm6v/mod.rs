//! Alternating sign matrices and six-vertex configurations with domain wall
//! boundary conditions.
//!
//! Indices in accessors are 0-based. Positions reported in errors and in
//! [`AsmStatistics::minus_positions`] are 1-based matrix coordinates.

mod enumerate;
mod sixv;
mod stats;
mod symmetry;

pub use enumerate::{count_asm, enumerate_asm, enumerate_asm_with_cap, AsmIter};
pub use sixv::{asm_to_sixv, diagonal_balance, sixv_to_asm, BalanceReport, SixVertexGrid, VertexType};
pub use stats::{statistics, AsmStatistics};
pub use symmetry::{symmetry_transform, transform_grid, transform_matrix, Symmetry};

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternatingSignMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl AlternatingSignMatrix {
    /// Caller guarantees validity.
    pub(crate) fn from_raw(n: usize, entries: Vec<i8>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        AlternatingSignMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Self::from_raw(n, e)
    }

    pub fn anti_identity(n: usize) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + (n - 1 - i)] = 1;
        }
        Self::from_raw(n, e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n.max(1)).map(<[i8]>::to_vec).take(self.n).collect()
    }

    pub fn minus_count(&self) -> usize {
        self.entries.iter().filter(|&&x| x == -1).count()
    }

    pub fn is_permutation(&self) -> bool {
        self.minus_count() == 0
    }
}

impl fmt::Debug for AlternatingSignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Asm{:?}", self.rows())
    }
}

impl fmt::Display for AlternatingSignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows().iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for AlternatingSignMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlternatingSignMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        validate_asm(&rows).map_err(serde::de::Error::custom)
    }
}

fn not_asm(rule: &str, location: String) -> Error {
    Error::NotAsm {
        rule: rule.to_string(),
        location,
    }
}

/// Checks the row and column rules and returns the validated matrix.
pub fn validate_asm(m: &[Vec<i64>]) -> Result<AlternatingSignMatrix> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(not_asm("square shape", format!("row {}", i + 1)));
        }
        for (j, &x) in row.iter().enumerate() {
            if !(-1..=1).contains(&x) {
                return Err(not_asm("entries in {-1,0,1}", format!("({},{})", i + 1, j + 1)));
            }
        }
    }
    for (i, row) in m.iter().enumerate() {
        let mut s = 0;
        for (j, &x) in row.iter().enumerate() {
            s += x;
            if !(0..=1).contains(&s) {
                return Err(not_asm("row partial sums in {0,1}", format!("({},{})", i + 1, j + 1)));
            }
        }
        if s != 1 {
            return Err(not_asm("row sum 1", format!("row {}", i + 1)));
        }
    }
    for j in 0..n {
        let mut s = 0;
        for (i, row) in m.iter().enumerate() {
            s += row[j];
            if !(0..=1).contains(&s) {
                return Err(not_asm(
                    "column partial sums in {0,1}",
                    format!("({},{})", i + 1, j + 1),
                ));
            }
        }
        if s != 1 {
            return Err(not_asm("column sum 1", format!("column {}", j + 1)));
        }
    }
    let entries = m.iter().flatten().map(|&x| x as i8).collect();
    Ok(AlternatingSignMatrix::from_raw(n, entries))
}
