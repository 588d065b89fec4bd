use crate::error::{Error, Result};
use crate::exact::{bareiss_det, Matrix, Scalar};
use crate::tsystem::{CoeffWindow, InitialData};
use serde::Serialize;

/// The three lattice steps. In `(x, y)` coordinates `W` goes to `(x+1, y+1)`,
/// `Z` to `(x+1, y−1)` and `ZW` to `(x+2, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    W,
    Zw,
    Z,
}

impl Step {
    pub fn name(self) -> &'static str {
        match self {
            Step::W => "w",
            Step::Zw => "zw",
            Step::Z => "z",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<S> {
    pub from: usize,
    pub to: usize,
    pub step: Step,
    pub weight: S,
}

/// Source of face labels for [`build_network`].
#[derive(Clone, Copy, Debug)]
pub enum FaceLabels<'a, S: Scalar> {
    /// Down-pointing faces carry the matrix entries, up-pointing faces carry 1.
    Matrix(&'a Matrix<S>),
    /// Arbitrary initial data centred at the origin: layer-1 values label the
    /// down-pointing faces, layer-0 values the up-pointing ones.
    General(&'a InitialData<S>),
}

/// Weighted directed network on the triangular domain of size `n`.
///
/// Vertices are stored in lattice coordinates `(u, v)` with `0 ≤ u, v < n`,
/// related to the plane coordinates by `x = u − v`, `y = u + v`. Path `i`
/// enters at `s_i = (1−i, i−1)` and leaves at `e_j = (j−1, j−1)`. Edge weights
/// are those of the unabsorbed network; the labels of the faces above the
/// exits are kept separately and enter as column factors.
#[derive(Clone, Debug)]
pub struct TriangularNetwork<S: Scalar> {
    n: usize,
    edges: Vec<Edge<S>>,
    out: Vec<Vec<usize>>,
    exit_labels: Vec<S>,
    unit: S,
}

struct Labels<'a, S: Scalar> {
    n: i64,
    src: FaceLabels<'a, S>,
    one: S,
}

impl<S: Scalar> Labels<'_, S> {
    /// Label of the down-pointing face with bottom vertex `(u, v)`.
    fn down(&self, u: i64, v: i64) -> S {
        match self.src {
            FaceLabels::Matrix(a) => a.get((self.n - v - 1) as usize, u as usize).clone(),
            FaceLabels::General(t) => t
                .get(u + v + 1 - self.n, u - v)
                .cloned()
                .expect("down face inside the initial diamond"),
        }
    }

    /// Label of the up-pointing face whose base starts at `(u, v)`; faces
    /// outside the domain count as 1.
    fn up(&self, u: i64, v: i64) -> S {
        let inside = (0..=self.n - 2).contains(&u) && (1..self.n).contains(&v);
        match self.src {
            FaceLabels::General(t) if inside => t
                .get(u + v + 1 - self.n, u - v + 1)
                .cloned()
                .expect("up face inside the initial diamond"),
            _ => self.one.clone(),
        }
    }

    fn down_nonzero(&self, u: i64, v: i64) -> Result<S> {
        let x = self.down(u, v);
        if x.is_zero() {
            return Err(Error::ZeroFaceLabel((self.n - v) as usize, (u + 1) as usize));
        }
        Ok(x)
    }

    fn up_nonzero(&self, u: i64, v: i64) -> Result<S> {
        let x = self.up(u, v);
        if x.is_zero() {
            let (i, j) = (u + v + 1 - self.n, u - v + 1);
            return Err(Error::ZeroDivision(format!("up-pointing face label t{i},{j}")));
        }
        Ok(x)
    }
}

/// Builds the network for the given face labels.
///
/// The `w` step out of the origin uses `λ_{1−n}`; it only feeds paths that
/// cannot appear in a non-intersecting family, so it is added only when the
/// window stores that coefficient.
pub fn build_network<S: Scalar>(
    labels: FaceLabels<'_, S>,
    coeffs: &CoeffWindow<S>,
) -> Result<TriangularNetwork<S>> {
    let (n, unit) = match labels {
        FaceLabels::Matrix(a) => {
            if !a.is_square() {
                return Err(Error::InvalidArgument("matrix is not square".into()));
            }
            (a.rows(), a.zero().one_like())
        }
        FaceLabels::General(t) => {
            if t.center() != (0, 0) {
                return Err(Error::InvalidArgument(
                    "general network needs initial data centred at the origin".into(),
                ));
            }
            (t.n(), t.unit().clone())
        }
    };
    coeffs.require_for(n)?;
    let ni = n as i64;
    let lab = Labels {
        n: ni,
        src: labels,
        one: unit.clone(),
    };
    let id = |u: i64, v: i64| (u * ni + v) as usize;
    let mut edges = Vec::new();
    for u in 0..ni {
        for v in 0..ni {
            let gauge = lab.up(u - 1, v).try_div(&lab.up_nonzero(u, v)?)?;
            if u + 1 < ni && ((u, v) != (0, 0) || coeffs.lambda(1 - ni).is_ok()) {
                let l = coeffs.lambda(u + v + 1 - ni)?;
                edges.push(Edge {
                    from: id(u, v),
                    to: id(u + 1, v),
                    step: Step::W,
                    weight: l.times(&gauge),
                });
            }
            if v >= 1 {
                let ratio = lab.down(u, v).try_div(&lab.down_nonzero(u, v - 1)?)?;
                if u + 1 < ni {
                    let m = coeffs.mu(u - v + 1)?;
                    edges.push(Edge {
                        from: id(u, v),
                        to: id(u + 1, v - 1),
                        step: Step::Zw,
                        weight: m.times(&ratio).times(&gauge),
                    });
                }
                edges.push(Edge {
                    from: id(u, v),
                    to: id(u, v - 1),
                    step: Step::Z,
                    weight: ratio,
                });
            }
        }
    }
    let mut out = vec![Vec::new(); n * n];
    for (k, e) in edges.iter().enumerate() {
        out[e.from].push(k);
    }
    let exit_labels = (0..ni).map(|u| lab.down(u, 0)).collect();
    let net = TriangularNetwork {
        n,
        edges,
        out,
        exit_labels,
        unit,
    };
    debug_assert!(net.is_acyclic());
    Ok(net)
}

impl<S: Scalar> TriangularNetwork<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.n
    }

    pub fn unit(&self) -> &S {
        &self.unit
    }

    pub fn vertex_uv(&self, id: usize) -> (i64, i64) {
        ((id / self.n) as i64, (id % self.n) as i64)
    }

    pub fn vertex_xy(&self, id: usize) -> (i64, i64) {
        let (u, v) = self.vertex_uv(id);
        (u - v, u + v)
    }

    pub fn id_uv(&self, u: i64, v: i64) -> Option<usize> {
        let n = self.n as i64;
        ((0..n).contains(&u) && (0..n).contains(&v)).then(|| (u * n + v) as usize)
    }

    pub fn id_xy(&self, x: i64, y: i64) -> Option<usize> {
        if (x + y).rem_euclid(2) != 0 {
            return None;
        }
        self.id_uv((x + y) / 2, (y - x) / 2)
    }

    /// `s_i`, 1-based.
    pub fn source(&self, i: usize) -> usize {
        i - 1
    }

    /// `e_j`, 1-based.
    pub fn exit(&self, j: usize) -> usize {
        (j - 1) * self.n
    }

    /// Label of the down-pointing face above `e_j` (1-based).
    pub fn exit_label(&self, j: usize) -> &S {
        &self.exit_labels[j - 1]
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge<S>> {
        self.out[v].iter().map(move |&k| &self.edges[k])
    }

    pub fn edge_between(&self, from: usize, to: usize) -> Option<&Edge<S>> {
        self.out_edges(from).find(|e| e.to == to)
    }

    /// Kahn's algorithm over the stored edges.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertex_count()];
        for e in &self.edges {
            indeg[e.to] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertex_count()).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.vertex_count());
        while let Some(v) = ready.pop() {
            order.push(v);
            for e in self.out_edges(v) {
                indeg[e.to] -= 1;
                if indeg[e.to] == 0 {
                    ready.push(e.to);
                }
            }
        }
        (order.len() == self.vertex_count()).then_some(order)
    }

    /// Path sums from one vertex to every vertex.
    fn sweep(&self, start: usize) -> Vec<S> {
        let zero = self.unit.zero_like();
        let mut acc = vec![zero; self.vertex_count()];
        acc[start] = self.unit.clone();
        // every step raises x = u − v, so sorting by x is a topological order
        let mut order: Vec<usize> = (0..self.vertex_count()).collect();
        order.sort_by_key(|&v| self.vertex_xy(v).0);
        for v in order {
            if acc[v].is_zero() {
                continue;
            }
            for e in self.out_edges(v) {
                let add = acc[v].times(&e.weight);
                acc[e.to] = acc[e.to].plus(&add);
            }
        }
        acc
    }

    /// `n × n` matrix of `Z_{i,j}`.
    pub fn partition_matrix(&self) -> Matrix<S> {
        let zero = self.unit.zero_like();
        let mut z = Matrix::zeros(&zero, self.n, self.n);
        for i in 1..=self.n {
            let acc = self.sweep(self.source(i));
            for j in 1..=self.n {
                z.set(i - 1, j - 1, acc[self.exit(j)].clone());
            }
        }
        z
    }

    /// `Z'_{i,j} = α(e_j) Z_{i,j}`.
    pub fn absorbed_partition_matrix(&self) -> Matrix<S> {
        let z = self.partition_matrix();
        Matrix::from_fn(z.zero(), self.n, self.n, |i, j| {
            z.get(i, j).times(&self.exit_labels[j])
        })
    }
}

/// Sum over directed paths `s_i → e_j` of edge-weight products (1-based).
pub fn path_partition<S: Scalar>(net: &TriangularNetwork<S>, i: usize, j: usize) -> Result<S> {
    let n = net.n();
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::InvalidArgument(format!(
            "path endpoints ({i},{j}) outside 1..={n}"
        )));
    }
    Ok(net.sweep(net.source(i))[net.exit(j)].clone())
}

/// Lambda-determinant as the determinant of the absorbed path matrix.
pub fn lgv_lambda_det<S: Scalar>(a: &Matrix<S>, coeffs: &CoeffWindow<S>) -> Result<S> {
    let net = build_network(FaceLabels::Matrix(a), coeffs)?;
    bareiss_det(&net.absorbed_partition_matrix())
}

/// `T_{0,0,n}` for general initial data, through the same determinant.
pub fn lgv_general<S: Scalar>(init: &InitialData<S>, coeffs: &CoeffWindow<S>) -> Result<S> {
    let net = build_network(FaceLabels::General(init), coeffs)?;
    bareiss_det(&net.absorbed_partition_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::tsystem::{dodgson, evolve, lambda_det_via_tsystem, ShiftConvention};
    use crate::testutil::{nondegenerate, q, rand_window, rnd};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;



    fn ones(n: usize) -> Matrix<Rational> {
        Matrix::from_fn(&q(0), n, n, |_, _| q(1))
    }

    /// Coefficient of `z^a w^b` in `1/(1 − z − λw − μzw)`.
    fn series(a: usize, b: usize, l: &Rational, m: &Rational) -> Rational {
        let mut c = vec![vec![q(0); b + 1]; a + 1];
        for i in 0..=a {
            for j in 0..=b {
                c[i][j] = if i == 0 && j == 0 {
                    q(1)
                } else {
                    let mut s = q(0);
                    if i > 0 {
                        s = s.plus(&c[i - 1][j]);
                    }
                    if j > 0 {
                        s = s.plus(&l.times(&c[i][j - 1]));
                    }
                    if i > 0 && j > 0 {
                        s = s.plus(&m.times(&c[i - 1][j - 1]));
                    }
                    s
                };
            }
        }
        c[a][b].clone()
    }

    #[test]
    fn trivial_sizes() {
        let a = Matrix::from_rows(&q(0), vec![vec![q(7)]]).unwrap();
        let w = CoeffWindow::homogeneous(1, q(2), q(3)).unwrap();
        let net = build_network(FaceLabels::Matrix(&a), &w).unwrap();
        assert_eq!(net.vertex_count(), 1);
        assert!(net.edges().is_empty());
        assert_eq!(path_partition(&net, 1, 1).unwrap(), q(1));
        assert_eq!(lgv_lambda_det(&a, &w).unwrap(), q(7));
        let w2 = CoeffWindow::homogeneous(2, q(1), q(1)).unwrap();
        assert_eq!(lgv_lambda_det(&ones(2), &w2).unwrap(), q(2));
        let w3 = CoeffWindow::homogeneous(3, q(1), q(1)).unwrap();
        assert_eq!(lgv_lambda_det(&ones(3), &w3).unwrap(), q(8));
    }

    #[test]
    fn homogeneous_series() {
        let (l, m) = (q(2), q(3));
        let n = 6;
        let w = CoeffWindow::homogeneous(n, l.clone(), m.clone()).unwrap();
        let net = build_network(FaceLabels::Matrix(&ones(n)), &w).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(
                    path_partition(&net, i, j).unwrap(),
                    series(i - 1, j - 1, &l, &m),
                    "Z_{i},{j}"
                );
            }
        }
        assert_eq!(path_partition(&net, 1, 2).unwrap(), q(2));
    }

    #[test]
    fn homogeneous_product() {
        let (l, m) = (q(2), q(3));
        for n in 1..=8 {
            let w = CoeffWindow::homogeneous(n, l.clone(), m.clone()).unwrap();
            let expect = l.plus(&m).pow_i((n * (n - 1) / 2) as i64).unwrap();
            assert_eq!(lgv_lambda_det(&ones(n), &w).unwrap(), expect, "n = {n}");
        }
    }

    #[test]
    fn matches_condensation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=5 {
            for _ in 0..10 {
                let (a, w) = nondegenerate(n, &mut rng);
                let d = dodgson(&a, &w, ShiftConvention::Lattice).unwrap();
                assert_eq!(lgv_lambda_det(&a, &w).unwrap(), d);
                assert_eq!(lambda_det_via_tsystem(&a, &w).unwrap(), d);
            }
        }
    }

    #[test]
    fn general_matches_evolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=5 {
            for _ in 0..5 {
                let init = InitialData::new(n, (0, 0), &q(1), |_, _| rnd(&mut rng));
                let w = rand_window(n, &mut rng);
                let (t, _) = evolve(&init, &w, (0, 0, n)).unwrap();
                assert_eq!(lgv_general(&init, &w).unwrap(), t, "n = {n}");
            }
        }
    }

    #[test]
    fn unit_up_labels_recover_matrix_network() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=5 {
            let (a, w) = nondegenerate(n, &mut rng);
            let init = InitialData::from_matrix(&a).unwrap();
            let g = build_network(FaceLabels::General(&init), &w).unwrap();
            let m = build_network(FaceLabels::Matrix(&a), &w).unwrap();
            assert_eq!(g.edges(), m.edges());
            assert!(g.is_acyclic());
        }
    }

    #[test]
    fn zero_denominator_reported() {
        let mut a = ones(3);
        a.set(2, 1, q(0));
        let w = CoeffWindow::homogeneous(3, q(1), q(1)).unwrap();
        assert_eq!(
            build_network(FaceLabels::Matrix(&a), &w).unwrap_err(),
            Error::ZeroFaceLabel(3, 2)
        );
        // first-row entries never divide
        let mut b = ones(3);
        b.set(0, 2, q(0));
        assert!(build_network(FaceLabels::Matrix(&b), &w).is_ok());
    }

    #[test]
    fn coordinates() {
        let w = CoeffWindow::homogeneous(4, q(1), q(1)).unwrap();
        let net = build_network(FaceLabels::Matrix(&ones(4)), &w).unwrap();
        for i in 1..=4 {
            let s = net.vertex_xy(net.source(i));
            assert_eq!(s, (1 - i as i64, i as i64 - 1));
            let e = net.vertex_xy(net.exit(i));
            assert_eq!(e, (i as i64 - 1, i as i64 - 1));
            assert_eq!(net.id_xy(s.0, s.1), Some(net.source(i)));
        }
        for v in 0..net.vertex_count() {
            let (x, y) = net.vertex_xy(v);
            assert!(x.abs() + (y - 3).abs() <= 3);
        }
        for e in net.edges() {
            assert!(net.vertex_xy(e.to).0 > net.vertex_xy(e.from).0);
        }
    }
}
