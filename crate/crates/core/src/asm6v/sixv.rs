use super::{validate_asm, AlternatingSignMatrix};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexType {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

/// Edge orientations around a vertex: `(west →, east →, north ↓, south ↓)`.
///
/// A horizontal edge points right exactly when the row sum to its left is 0;
/// a vertical edge points down exactly when the column sum above it is 1.
const fn arrows(t: VertexType) -> (bool, bool, bool, bool) {
    match t {
        VertexType::A1 => (true, true, false, false),
        VertexType::A2 => (false, false, true, true),
        VertexType::B1 => (true, true, true, true),
        VertexType::B2 => (false, false, false, false),
        VertexType::C1 => (true, false, false, true),
        VertexType::C2 => (false, true, true, false),
    }
}

impl VertexType {
    pub const ALL: [VertexType; 6] = [
        VertexType::A1,
        VertexType::A2,
        VertexType::B1,
        VertexType::B2,
        VertexType::C1,
        VertexType::C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VertexType::A1 => "a1",
            VertexType::A2 => "a2",
            VertexType::B1 => "b1",
            VertexType::B2 => "b2",
            VertexType::C1 => "c1",
            VertexType::C2 => "c2",
        }
    }

    /// Vertex type of a zero entry from the row sum to its left and the
    /// column sum above it.
    pub fn from_sums(row_left: i8, col_above: i8) -> VertexType {
        match (row_left, col_above) {
            (0, 0) => VertexType::A1,
            (1, 1) => VertexType::A2,
            (0, 1) => VertexType::B1,
            _ => VertexType::B2,
        }
    }

    pub fn asm_entry(self) -> i8 {
        match self {
            VertexType::C1 => 1,
            VertexType::C2 => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SixVertexGrid {
    n: usize,
    types: Vec<Vec<VertexType>>,
}

impl SixVertexGrid {
    /// Wraps raw types; consistency is only checked by [`sixv_to_asm`].
    pub fn new(types: Vec<Vec<VertexType>>) -> Result<Self> {
        let n = types.len();
        if types.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGrid("grid is not square".into()));
        }
        Ok(SixVertexGrid { n, types })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> VertexType {
        self.types[i][j]
    }

    pub fn types(&self) -> &[Vec<VertexType>] {
        &self.types
    }

    pub fn count(&self, t: VertexType) -> usize {
        self.types.iter().flatten().filter(|&&x| x == t).count()
    }

    pub fn counts(&self) -> BTreeMap<VertexType, usize> {
        VertexType::ALL.iter().map(|&t| (t, self.count(t))).collect()
    }
}

impl fmt::Debug for SixVertexGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SixVertexGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.types.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<&str> = row.iter().map(|t| t.name()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn asm_to_sixv(b: &AlternatingSignMatrix) -> SixVertexGrid {
    let n = b.n();
    let mut col = vec![0i8; n];
    let mut types = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = 0i8;
        let mut row = Vec::with_capacity(n);
        for (j, c) in col.iter_mut().enumerate() {
            let v = b.get(i, j);
            row.push(match v {
                1 => VertexType::C1,
                -1 => VertexType::C2,
                _ => VertexType::from_sums(r, *c),
            });
            r += v;
            *c += v;
        }
        types.push(row);
    }
    SixVertexGrid { n, types }
}

/// Inverse of [`asm_to_sixv`], checking every shared edge and the boundary.
pub fn sixv_to_asm(g: &SixVertexGrid) -> Result<AlternatingSignMatrix> {
    let n = g.n;
    for i in 0..n {
        for j in 0..n {
            let (w, e, no, s) = arrows(g.types[i][j]);
            if j == 0 && !w {
                return Err(Error::InvalidGrid(format!(
                    "west boundary edge of row {} points outward",
                    i + 1
                )));
            }
            if j == n - 1 && e {
                return Err(Error::InvalidGrid(format!(
                    "east boundary edge of row {} points outward",
                    i + 1
                )));
            }
            if i == 0 && no {
                return Err(Error::InvalidGrid(format!(
                    "north boundary edge of column {} points inward",
                    j + 1
                )));
            }
            if i == n - 1 && !s {
                return Err(Error::InvalidGrid(format!(
                    "south boundary edge of column {} points inward",
                    j + 1
                )));
            }
            if j + 1 < n && e != arrows(g.types[i][j + 1]).0 {
                return Err(Error::InvalidGrid(format!(
                    "vertices ({},{}) and ({},{}) disagree on their shared edge",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 2
                )));
            }
            if i + 1 < n && s != arrows(g.types[i + 1][j]).2 {
                return Err(Error::InvalidGrid(format!(
                    "vertices ({},{}) and ({},{}) disagree on their shared edge",
                    i + 1,
                    j + 1,
                    i + 2,
                    j + 1
                )));
            }
        }
    }
    let rows: Vec<Vec<i64>> = g
        .types
        .iter()
        .map(|r| r.iter().map(|t| t.asm_entry() as i64).collect())
        .collect();
    validate_asm(&rows).map_err(|e| Error::InvalidGrid(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    /// `(offset j−i, #a1, #a2)` for unbalanced diagonals.
    pub diagonal_violations: Vec<(i64, usize, usize)>,
    /// `(offset i+j, #b1, #b2)` for unbalanced anti-diagonals.
    pub antidiagonal_violations: Vec<(i64, usize, usize)>,
}

/// Compares a1 with a2 along each diagonal and b1 with b2 along each
/// anti-diagonal.
pub fn diagonal_balance(g: &SixVertexGrid) -> BalanceReport {
    let mut diag: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    let mut anti: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for i in 0..g.n {
        for j in 0..g.n {
            let d = j as i64 - i as i64;
            let s = (i + j) as i64;
            match g.types[i][j] {
                VertexType::A1 => diag.entry(d).or_default().0 += 1,
                VertexType::A2 => diag.entry(d).or_default().1 += 1,
                VertexType::B1 => anti.entry(s).or_default().0 += 1,
                VertexType::B2 => anti.entry(s).or_default().1 += 1,
                _ => {}
            }
        }
    }
    let pick = |m: BTreeMap<i64, (usize, usize)>| -> Vec<(i64, usize, usize)> {
        m.into_iter()
            .filter(|(_, (x, y))| x != y)
            .map(|(k, (x, y))| (k, x, y))
            .collect()
    };
    let diagonal_violations = pick(diag);
    let antidiagonal_violations = pick(anti);
    BalanceReport {
        balanced: diagonal_violations.is_empty() && antidiagonal_violations.is_empty(),
        diagonal_violations,
        antidiagonal_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm6v::enumerate_asm;
    use VertexType::*;

    fn diamond() -> AlternatingSignMatrix {
        validate_asm(&[vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap()
    }

    #[test]
    fn singleton() {
        let g = asm_to_sixv(&AlternatingSignMatrix::identity(1));
        assert_eq!(g.types(), &[vec![C1]]);
        assert_eq!(sixv_to_asm(&g).unwrap(), AlternatingSignMatrix::identity(1));
    }

    #[test]
    fn diamond_grid() {
        let g = asm_to_sixv(&diamond());
        assert_eq!(
            g.types(),
            &[vec![A1, C1, B2], vec![C1, C2, C1], vec![B1, C1, A2]]
        );
    }

    #[test]
    fn identity_2() {
        let g = asm_to_sixv(&AlternatingSignMatrix::identity(2));
        assert_eq!(g.types(), &[vec![C1, B2], vec![B1, C1]]);
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 1..=5 {
            for b in enumerate_asm(n).unwrap() {
                let g = asm_to_sixv(&b);
                assert_eq!(sixv_to_asm(&g).unwrap(), b);
                assert_eq!(g.count(C2), b.minus_count());
                assert_eq!(g.count(C1), n + b.minus_count());
                assert!(diagonal_balance(&g).balanced, "{b:?}");
            }
        }
    }

    #[test]
    fn rejects_inconsistent_edges() {
        let g = SixVertexGrid::new(vec![vec![C1, C1], vec![B1, C1]]).unwrap();
        assert!(matches!(sixv_to_asm(&g), Err(Error::InvalidGrid(_))));
        let g = SixVertexGrid::new(vec![vec![A1]]).unwrap();
        assert!(matches!(sixv_to_asm(&g), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn grid_json() {
        let g = asm_to_sixv(&AlternatingSignMatrix::identity(2));
        let s = serde_json::to_string(&g.types()).unwrap();
        assert_eq!(s, r#"[["c1","b2"],["b1","c1"]]"#);
    }
}
