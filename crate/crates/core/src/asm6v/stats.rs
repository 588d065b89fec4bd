use super::{asm_to_sixv, AlternatingSignMatrix, VertexType};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsmStatistics {
    pub inv: i64,
    pub minus_count: usize,
    pub counts: BTreeMap<VertexType, usize>,
    /// a1 vertices per diagonal offset `j − i`.
    pub i: BTreeMap<i64, usize>,
    /// b1 vertices per anti-diagonal weight offset `i + j − n − 1` (1-based i, j).
    pub i_prime: BTreeMap<i64, usize>,
    /// 1-based positions of the −1 entries.
    pub minus_positions: Vec<(usize, usize)>,
}

/// Generalized inversion number `Σ_{k<ℓ, m<p} b_{k,p} b_{ℓ,m}`.
pub fn inversion_number(b: &AlternatingSignMatrix) -> i64 {
    let n = b.n();
    // suffix[l][m] = Σ_{ℓ' ≥ l, m' < m} b_{ℓ',m'}
    let mut below_left = vec![vec![0i64; n + 1]; n + 1];
    for l in (0..n).rev() {
        for m in 0..n {
            below_left[l][m + 1] = below_left[l][m] + below_left[l + 1][m + 1]
                - below_left[l + 1][m]
                + b.get(l, m) as i64;
        }
    }
    let mut inv = 0;
    for k in 0..n {
        for p in 0..n {
            let x = b.get(k, p) as i64;
            if x != 0 {
                inv += x * below_left[k + 1][p];
            }
        }
    }
    inv
}

pub fn statistics(b: &AlternatingSignMatrix) -> AsmStatistics {
    let n = b.n() as i64;
    let g = asm_to_sixv(b);
    let mut i_map: BTreeMap<i64, usize> = (2 - n..=n - 2).map(|a| (a, 0)).collect();
    let mut ip_map = i_map.clone();
    let mut minus_positions = Vec::new();
    for r in 0..b.n() {
        for c in 0..b.n() {
            let (i, j) = (r as i64 + 1, c as i64 + 1);
            match g.get(r, c) {
                VertexType::A1 => *i_map.entry(j - i).or_default() += 1,
                VertexType::B1 => *ip_map.entry(i + j - n - 1).or_default() += 1,
                VertexType::C2 => minus_positions.push((r + 1, c + 1)),
                _ => {}
            }
        }
    }
    AsmStatistics {
        inv: inversion_number(b),
        minus_count: b.minus_count(),
        counts: g.counts(),
        i: i_map,
        i_prime: ip_map,
        minus_positions,
    }
}
