use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Node {
    /// Mutable lattice vertex `(i, j)`.
    Vertex(i64, i64),
    /// Frozen vertex carrying `λ_a`.
    Lambda(i64),
    /// Frozen vertex carrying `μ_b`.
    Mu(i64),
}

/// Extended exchange matrix on the window `|i|, |j| ≤ radius`.
///
/// Rows run over all nodes, columns over the mutable vertices only. Vertices
/// with `i + j` odd form the first mutation class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedExchangeMatrix {
    pub radius: i64,
    pub nodes: Vec<Node>,
    pub mutable: usize,
    index: HashMap<Node, usize>,
    /// `entries[row][col]`.
    pub entries: Vec<Vec<i64>>,
}

fn delta(a: i64, b: i64) -> i64 {
    (a == b) as i64
}

fn is_odd(i: i64, j: i64) -> bool {
    (i + j).rem_euclid(2) == 1
}

impl ExtendedExchangeMatrix {
    /// The initial seed `B̃_0`.
    pub fn initial(radius: i64) -> Self {
        let mut nodes = Vec::new();
        for i in -radius..=radius {
            for j in -radius..=radius {
                nodes.push(Node::Vertex(i, j));
            }
        }
        let mutable = nodes.len();
        nodes.extend((-radius..=radius).map(Node::Lambda));
        nodes.extend((-radius..=radius).map(Node::Mu));
        let index = nodes.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let mut entries = vec![vec![0i64; mutable]; nodes.len()];
        for (r, row) in nodes.iter().enumerate() {
            for (c, col) in nodes[..mutable].iter().enumerate() {
                let Node::Vertex(i2, j2) = *col else { unreachable!() };
                entries[r][c] = match *row {
                    Node::Vertex(i, j) => {
                        let b = delta(i, i2) * delta((j - j2).abs(), 1)
                            - delta(j, j2) * delta((i - i2).abs(), 1);
                        match (is_odd(i, j), is_odd(i2, j2)) {
                            (true, false) => b,
                            (false, true) => -b,
                            _ => 0,
                        }
                    }
                    Node::Lambda(a) if is_odd(i2, j2) => delta(i2, a),
                    Node::Lambda(a) => -delta(i2, a),
                    Node::Mu(b) if is_odd(i2, j2) => -delta(j2, b),
                    Node::Mu(b) => delta(j2, b),
                };
            }
        }
        ExtendedExchangeMatrix {
            radius,
            nodes,
            mutable,
            index,
            entries,
        }
    }

    pub fn column(&self, v: Node) -> Option<usize> {
        self.index.get(&v).copied().filter(|&k| k < self.mutable)
    }

    pub fn entry(&self, u: Node, v: Node) -> Option<i64> {
        Some(self.entries[*self.index.get(&u)?][self.column(v)?])
    }

    /// Matrix mutation at mutable column `k`.
    pub fn mutate(&mut self, k: usize) {
        let old = self.entries.clone();
        for (u, row) in self.entries.iter_mut().enumerate() {
            for (v, x) in row.iter_mut().enumerate() {
                if u == k || v == k {
                    *x = -old[u][v];
                } else {
                    let (buk, bkv) = (old[u][k], old[k][v]);
                    *x = old[u][v] + buk.signum() * (buk * bkv).max(0);
                }
            }
        }
    }

    pub fn negated(&self) -> Self {
        let mut m = self.clone();
        for row in &mut m.entries {
            for x in row {
                *x = -*x;
            }
        }
        m
    }

    fn in_interior(&self, node: Node, margin: i64) -> bool {
        let lim = self.radius - margin;
        match node {
            Node::Vertex(i, j) => i.abs() <= lim && j.abs() <= lim,
            Node::Lambda(a) => a.abs() <= lim,
            Node::Mu(b) => b.abs() <= lim,
        }
    }

    /// First entry, both of whose nodes are at least `margin` inside the window,
    /// on which the two matrices differ.
    pub fn interior_difference(&self, other: &Self, margin: i64) -> Option<(Node, Node, i64, i64)> {
        for (u, &nu) in self.nodes.iter().enumerate() {
            if !self.in_interior(nu, margin) {
                continue;
            }
            for (v, &nv) in self.nodes[..self.mutable].iter().enumerate() {
                if self.in_interior(nv, margin) && self.entries[u][v] != other.entries[u][v] {
                    return Some((nu, nv, self.entries[u][v], other.entries[u][v]));
                }
            }
        }
        None
    }

    fn class(&self, odd: bool) -> Vec<usize> {
        (0..self.mutable)
            .filter(|&k| matches!(self.nodes[k], Node::Vertex(i, j) if is_odd(i, j) == odd))
            .collect()
    }

    /// Mutates every vertex of one parity class, after checking that no two of
    /// them are joined and that the reverse order gives the same matrix.
    pub fn compound_mutation(&mut self, odd: bool) -> Result<()> {
        let schedule = self.class(odd);
        for &a in &schedule {
            for &b in &schedule {
                if self.entries[a][b] != 0 {
                    return Err(Error::OrderDependence(format!(
                        "{:?} and {:?} are joined by {}",
                        self.nodes[a], self.nodes[b], self.entries[a][b]
                    )));
                }
            }
        }
        let mut reverse = self.clone();
        for &k in &schedule {
            self.mutate(k);
        }
        for &k in schedule.iter().rev() {
            reverse.mutate(k);
        }
        if reverse.entries != self.entries {
            return Err(Error::OrderDependence("forward and reverse schedules differ".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterReport {
    pub radius: i64,
    pub compared_vertices: usize,
    /// After mutating the odd class: interior equals `−B̃_0`.
    pub flipped: bool,
    /// After also mutating the even class: interior equals `+B̃_0`.
    pub restored: bool,
    pub first_violation: Option<String>,
}

impl ClusterReport {
    pub fn passed(&self) -> bool {
        self.flipped && self.restored
    }
}

pub fn cluster_mutation_check(radius: i64) -> Result<ClusterReport> {
    if radius < 3 {
        return Err(Error::InvalidArgument("window radius must be at least 3".into()));
    }
    let b0 = ExtendedExchangeMatrix::initial(radius);
    let mut b = b0.clone();
    b.compound_mutation(true)?;
    let flip = b.interior_difference(&b0.negated(), 2);
    b.compound_mutation(false)?;
    let restore = b.interior_difference(&b0, 2);
    let lim = radius - 2;
    Ok(ClusterReport {
        radius,
        compared_vertices: ((2 * lim + 1) * (2 * lim + 1)) as usize,
        flipped: flip.is_none(),
        restored: restore.is_none(),
        first_violation: flip
            .or(restore)
            .map(|(u, v, x, y)| format!("{u:?} -> {v:?}: {x} != {y}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_shape() {
        let b = ExtendedExchangeMatrix::initial(3);
        let x = Node::Vertex(0, 1);
        assert_eq!(b.entry(x, Node::Vertex(0, 0)), Some(1));
        assert_eq!(b.entry(x, Node::Vertex(1, 1)), Some(-1));
        assert_eq!(b.entry(Node::Vertex(0, 0), x), Some(-1));
        assert_eq!(b.entry(Node::Lambda(0), x), Some(1));
        assert_eq!(b.entry(Node::Mu(1), x), Some(-1));
        assert_eq!(b.entry(Node::Lambda(0), Node::Vertex(0, 0)), Some(-1));
        assert_eq!(b.entry(Node::Mu(0), Node::Vertex(0, 0)), Some(1));
        // skew-symmetric principal part
        for u in 0..b.mutable {
            for v in 0..b.mutable {
                assert_eq!(b.entries[u][v], -b.entries[v][u]);
            }
        }
    }

    #[test]
    fn flips_and_restores() {
        for r in [3, 4, 5] {
            let rep = cluster_mutation_check(r).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        assert!(cluster_mutation_check(2).is_err());
    }

    #[test]
    fn boundary_is_not_clean() {
        let b0 = ExtendedExchangeMatrix::initial(3);
        let mut b = b0.clone();
        b.compound_mutation(true).unwrap();
        assert!(b.interior_difference(&b0.negated(), 0).is_some());
    }
}
