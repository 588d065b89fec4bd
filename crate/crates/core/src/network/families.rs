use super::graph::{Step, TriangularNetwork};
use crate::asm6v::{SixVertexGrid, VertexType};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use serde::Serialize;
use std::collections::HashSet;

/// A family of vertex-disjoint paths, path `i` running from `s_i` to
/// `e_{permutation[i]}` (1-based exits). Vertices are in `(x, y)` coordinates.
/// The weight includes the labels of the faces above the exits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathFamily<S> {
    pub paths: Vec<Vec<(i64, i64)>>,
    pub permutation: Vec<usize>,
    pub weight: S,
}

/// Occupation pattern of one down-pointing face: which of its three edges
/// are used and whether its bottom vertex is visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrianglePattern {
    Empty,
    BottomOnly,
    TopOnly,
    TopAndBottom,
    LeftOnly,
    RightOnly,
    LeftAndRight,
}

impl TrianglePattern {
    pub fn vertex_type(self) -> VertexType {
        match self {
            TrianglePattern::Empty => VertexType::B2,
            TrianglePattern::BottomOnly => VertexType::C1,
            TrianglePattern::TopOnly | TrianglePattern::LeftAndRight => VertexType::C2,
            TrianglePattern::TopAndBottom => VertexType::B1,
            TrianglePattern::LeftOnly => VertexType::A2,
            TrianglePattern::RightOnly => VertexType::A1,
        }
    }
}

struct Search<'a, S: Scalar> {
    net: &'a TriangularNetwork<S>,
    /// `reach[k][v]`: vertex `v` can reach exit `k+1`.
    reach: Vec<Vec<bool>>,
    reserved: Vec<Option<usize>>,
    occupied: Vec<bool>,
    stack: Vec<Vec<usize>>,
    found: Vec<(Vec<Vec<usize>>, S)>,
}

impl<S: Scalar> Search<'_, S> {
    fn start_path(&mut self, k: usize, weight: S) {
        let s = self.net.source(k + 1);
        if self.occupied[s] || !self.reach[k][s] {
            return;
        }
        self.occupied[s] = true;
        self.stack.push(vec![s]);
        self.walk(k, s, weight);
        self.stack.pop();
        self.occupied[s] = false;
    }

    fn walk(&mut self, k: usize, v: usize, weight: S) {
        if v == self.net.exit(k + 1) {
            if k == 0 {
                let mut paths = self.stack.clone();
                paths.reverse();
                self.found.push((paths, weight));
            } else {
                self.start_path(k - 1, weight);
            }
            return;
        }
        let mut next: Vec<(Step, usize, S)> = self
            .net
            .out_edges(v)
            .map(|e| (e.step, e.to, e.weight.clone()))
            .collect();
        next.sort_by_key(|(s, _, _)| *s);
        for (_, to, w) in next {
            let blocked = self.occupied[to]
                || !self.reach[k][to]
                || self.reserved[to].is_some_and(|owner| owner != k);
            if blocked {
                continue;
            }
            self.occupied[to] = true;
            self.stack.last_mut().expect("open path").push(to);
            self.walk(k, to, weight.times(&w));
            self.stack.last_mut().expect("open path").pop();
            self.occupied[to] = false;
        }
    }
}

/// All non-intersecting families with `s_i → e_i`, found by backtracking from
/// the topmost path down with a fixed step order (`w`, `zw`, `z`).
pub fn enumerate_families<S: Scalar>(net: &TriangularNetwork<S>) -> Result<Vec<PathFamily<S>>> {
    let n = net.n();
    let cap = crate::enumeration_cap(5);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let one = net.unit().clone();
    if n == 0 {
        return Ok(vec![PathFamily {
            paths: vec![],
            permutation: vec![],
            weight: one,
        }]);
    }
    let vc = net.vertex_count();
    let mut reach = vec![vec![false; vc]; n];
    for (k, r) in reach.iter_mut().enumerate() {
        let exit = net.exit(k + 1);
        r[exit] = true;
        // reverse topological sweep: x decreases
        let mut order: Vec<usize> = (0..vc).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(net.vertex_xy(v).0));
        for v in order {
            if net.out_edges(v).any(|e| r[e.to]) {
                r[v] = true;
            }
        }
    }
    let mut reserved = vec![None; vc];
    for k in 0..n {
        reserved[net.source(k + 1)] = Some(k);
        reserved[net.exit(k + 1)] = Some(k);
    }
    let mut search = Search {
        net,
        reach,
        reserved,
        occupied: vec![false; vc],
        stack: Vec::new(),
        found: Vec::new(),
    };
    let absorbed = (1..=n).fold(one, |acc, j| acc.times(net.exit_label(j)));
    search.start_path(n - 1, absorbed);
    Ok(search
        .found
        .into_iter()
        .map(|(paths, weight)| PathFamily {
            paths: paths
                .into_iter()
                .map(|p| p.into_iter().map(|v| net.vertex_xy(v)).collect())
                .collect(),
            permutation: (1..=n).collect(),
            weight,
        })
        .collect())
}

/// Pattern of every down-pointing face; entry `[i−1][j−1]` is the face
/// labelled `a_{i,j}`.
pub fn triangle_patterns<S: Scalar>(
    net: &TriangularNetwork<S>,
    family: &PathFamily<S>,
) -> Result<Vec<Vec<TrianglePattern>>> {
    let n = net.n();
    let ids = |p: &(i64, i64)| {
        net.id_xy(p.0, p.1)
            .ok_or_else(|| Error::InvalidArgument(format!("vertex {p:?} outside the network")))
    };
    let mut visited = HashSet::new();
    let mut used = HashSet::new();
    for path in &family.paths {
        let path: Vec<usize> = path.iter().map(ids).collect::<Result<_>>()?;
        for w in path.windows(2) {
            if net.edge_between(w[0], w[1]).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "no edge between {:?} and {:?}",
                    net.vertex_xy(w[0]),
                    net.vertex_xy(w[1])
                )));
            }
            used.insert((w[0], w[1]));
        }
        for v in path {
            if !visited.insert(v) {
                return Err(Error::InvalidArgument(format!(
                    "paths meet at {:?}",
                    net.vertex_xy(v)
                )));
            }
        }
    }
    let edge = |a: Option<usize>, b: Option<usize>| match (a, b) {
        (Some(a), Some(b)) => used.contains(&(a, b)),
        _ => false,
    };
    let mut out = vec![vec![TrianglePattern::Empty; n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let (u, v) = (j as i64 - 1, (n - i) as i64);
            let bottom = net.id_uv(u, v);
            let top_left = net.id_uv(u, v + 1);
            let top_right = net.id_uv(u + 1, v);
            let occupied = bottom.is_some_and(|b| visited.contains(&b));
            let top = edge(top_left, top_right);
            let left = edge(top_left, bottom);
            let right = edge(bottom, top_right);
            out[i - 1][j - 1] = match (top, left, right, occupied) {
                (false, false, false, false) => TrianglePattern::Empty,
                (false, false, false, true) => TrianglePattern::BottomOnly,
                (true, false, false, false) => TrianglePattern::TopOnly,
                (true, false, false, true) => TrianglePattern::TopAndBottom,
                (false, true, false, true) => TrianglePattern::LeftOnly,
                (false, false, true, true) => TrianglePattern::RightOnly,
                (false, true, true, true) => TrianglePattern::LeftAndRight,
                _ => return Err(Error::UnclassifiableTriangle(i, j)),
            };
        }
    }
    Ok(out)
}

/// Six-vertex configuration of a family together with its number of `c2`
/// faces `m`; each configuration has exactly `2^m` preimages.
pub fn family_to_sixv<S: Scalar>(
    net: &TriangularNetwork<S>,
    family: &PathFamily<S>,
) -> Result<(SixVertexGrid, usize)> {
    if family.permutation.iter().enumerate().any(|(k, &p)| p != k + 1) {
        return Err(Error::InvalidArgument("family is not identity-routed".into()));
    }
    let patterns = triangle_patterns(net, family)?;
    let types: Vec<Vec<VertexType>> = patterns
        .iter()
        .map(|row| row.iter().map(|p| p.vertex_type()).collect())
        .collect();
    let grid = SixVertexGrid::new(types)?;
    let m = grid.count(VertexType::C2);
    Ok((grid, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm6v::{asm_to_sixv, enumerate_asm, sixv_to_asm, AlternatingSignMatrix};
    use crate::exact::{Matrix, Rational};
    use crate::network::{build_network, lgv_lambda_det, FaceLabels};
    use crate::exact::{LaurentPolynomial, VarSet};
    use crate::tsystem::{lambda_name, mu_name, t_name, CoeffWindow, InitialData};
    use crate::testutil::{nondegenerate, q};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;



    fn unit_net(n: usize) -> TriangularNetwork<Rational> {
        let a = Matrix::from_fn(&q(0), n, n, |_, _| q(1));
        let w = CoeffWindow::homogeneous(n, q(1), q(1)).unwrap();
        build_network(FaceLabels::Matrix(&a), &w).unwrap()
    }

    #[test]
    fn unit_counts() {
        for (n, count) in [(1, 1), (2, 2), (3, 8), (4, 64)] {
            let fams = enumerate_families(&unit_net(n)).unwrap();
            assert_eq!(fams.len(), count, "n = {n}");
            assert!(fams.iter().all(|f| f.weight == q(1)));
        }
    }

    #[test]
    fn disjoint_and_deterministic() {
        let net = unit_net(4);
        let a = enumerate_families(&net).unwrap();
        let b = enumerate_families(&net).unwrap();
        assert_eq!(a, b);
        for f in &a {
            let mut seen = HashSet::new();
            for p in &f.paths {
                for v in p {
                    assert!(seen.insert(*v));
                }
            }
            for (k, p) in f.paths.iter().enumerate() {
                let i = k as i64 + 1;
                assert_eq!(p[0], (1 - i, i - 1));
                assert_eq!(*p.last().unwrap(), (i - 1, i - 1));
            }
        }
    }

    #[test]
    fn sum_equals_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            for _ in 0..3 {
                let (a, w) = nondegenerate(n, &mut rng);
                let net = build_network(FaceLabels::Matrix(&a), &w).unwrap();
                let fams = enumerate_families(&net).unwrap();
                let total = fams.iter().fold(q(0), |acc, f| acc.plus(&f.weight));
                assert_eq!(total, lgv_lambda_det(&a, &w).unwrap(), "n = {n}");
            }
        }
    }

    #[test]
    fn fibers_over_asms() {
        for n in 1..=4 {
            let net = unit_net(n);
            let mut fibers: BTreeMap<Vec<Vec<i8>>, (usize, usize)> = BTreeMap::new();
            for f in enumerate_families(&net).unwrap() {
                let (grid, m) = family_to_sixv(&net, &f).unwrap();
                let b = sixv_to_asm(&grid).unwrap();
                assert_eq!(asm_to_sixv(&b), grid);
                assert_eq!(b.minus_count(), m);
                fibers.entry(b.rows()).or_insert((0, m)).0 += 1;
            }
            let asms: Vec<AlternatingSignMatrix> = enumerate_asm(n).unwrap().collect();
            assert_eq!(fibers.len(), asms.len(), "n = {n}");
            for (_, (size, m)) in fibers {
                assert_eq!(size, 1 << m);
            }
        }
    }

    #[test]
    fn n3_diamond_has_two_preimages() {
        let net = unit_net(3);
        let diamond = vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]];
        let hits = enumerate_families(&net)
            .unwrap()
            .iter()
            .filter(|f| {
                let (g, _) = family_to_sixv(&net, f).unwrap();
                sixv_to_asm(&g).unwrap().rows() == diamond
            })
            .count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn cap_enforced() {
        let err = enumerate_families(&unit_net(6)).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { n: 6, .. }));
    }

    #[test]
    fn rejects_broken_family() {
        let net = unit_net(2);
        let mut f = enumerate_families(&net).unwrap().remove(0);
        f.paths[1] = vec![(-1, 1), (0, 0), (1, 1)];
        assert!(triangle_patterns(&net, &f).is_err());
    }

    #[test]
    fn general_n3_monomials() {
        let mut names: Vec<String> = Vec::new();
        for a in -1..=1 {
            names.push(lambda_name(a));
            names.push(mu_name(a));
        }
        let init_names = InitialData::ones(3, &q(1));
        names.extend(init_names.entries().map(|((i, j), _)| t_name(*i, *j)));
        let vars = VarSet::new(names).unwrap();
        let init = InitialData::symbolic(3, &vars).unwrap();
        let w = CoeffWindow::symbolic(&vars, -1..=1).unwrap();
        let net = build_network(FaceLabels::General(&init), &w).unwrap();
        let fams = enumerate_families(&net).unwrap();
        assert_eq!(fams.len(), 8);

        let v = |s: String| LaurentPolynomial::var(&vars, &s).unwrap();
        let mono = |num: &[&str], den: &[&str]| {
            let top = num.iter().fold(LaurentPolynomial::constant(&vars, 1), |acc, s| {
                acc.times(&v(s.to_string()))
            });
            den.iter().fold(top, |acc, s| acc.try_div(&v(s.to_string())).unwrap())
        };
        let expected = [
            mono(&["μ-1", "μ0", "μ1", "t0,-2", "t0,0", "t0,2"], &["t0,-1", "t0,1"]),
            mono(&["λ0", "μ0", "μ1", "t-1,-1", "t1,-1", "t0,2"], &["t0,-1", "t0,1"]),
            mono(&["μ-1", "μ0", "λ0", "t0,-2", "t-1,1", "t1,1"], &["t0,-1", "t0,1"]),
            mono(
                &["λ0", "λ0", "μ0", "t-1,-1", "t-1,1", "t1,-1", "t1,1"],
                &["t0,-1", "t0,1", "t0,0"],
            ),
            mono(
                &["λ0", "μ0", "μ0", "t-1,-1", "t-1,1", "t1,-1", "t1,1"],
                &["t-1,0", "t1,0", "t0,0"],
            ),
            mono(&["μ0", "λ0", "λ1", "t-1,-1", "t-1,1", "t2,0"], &["t-1,0", "t1,0"]),
            mono(&["λ-1", "λ0", "μ0", "t1,-1", "t1,1", "t-2,0"], &["t-1,0", "t1,0"]),
            mono(&["λ-1", "λ0", "λ1", "t2,0", "t0,0", "t-2,0"], &["t-1,0", "t1,0"]),
        ];
        let mut got: Vec<String> = fams.iter().map(|f| f.weight.to_string()).collect();
        let mut want: Vec<String> = expected.iter().map(|m| m.to_string()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }
}
