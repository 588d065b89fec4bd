use super::{AlternatingSignMatrix, SixVertexGrid, VertexType};
use crate::exact::{Matrix, Scalar};
use serde::{Deserialize, Serialize};

/// `Sigma` is the quarter turn `(i, j) ↦ (n+1−j, i)`, `Tau` the transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Sigma,
    Tau,
}

impl Symmetry {
    /// 0-based source cell of target cell `(i, j)`.
    pub fn source(self, n: usize, i: usize, j: usize) -> (usize, usize) {
        match self {
            Symmetry::Sigma => (n - 1 - j, i),
            Symmetry::Tau => (j, i),
        }
    }

    pub fn vertex(self, t: VertexType) -> VertexType {
        use VertexType::*;
        match (self, t) {
            (Symmetry::Sigma, A1) => B2,
            (Symmetry::Sigma, B1) => A1,
            (Symmetry::Sigma, A2) => B1,
            (Symmetry::Sigma, B2) => A2,
            (Symmetry::Tau, B1) => B2,
            (Symmetry::Tau, B2) => B1,
            (_, t) => t,
        }
    }
}

pub fn symmetry_transform(b: &AlternatingSignMatrix, phi: Symmetry) -> AlternatingSignMatrix {
    let n = b.n();
    let mut e = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (r, c) = phi.source(n, i, j);
            e.push(b.get(r, c));
        }
    }
    AlternatingSignMatrix::from_raw(n, e)
}

pub fn transform_grid(g: &SixVertexGrid, phi: Symmetry) -> SixVertexGrid {
    let n = g.n();
    let types = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (r, c) = phi.source(n, i, j);
                    phi.vertex(g.get(r, c))
                })
                .collect()
        })
        .collect();
    SixVertexGrid::new(types).expect("square by construction")
}

pub fn transform_matrix<S: Scalar>(a: &Matrix<S>, phi: Symmetry) -> Matrix<S> {
    let n = a.rows();
    Matrix::from_fn(a.zero(), n, n, |i, j| {
        let (r, c) = phi.source(n, i, j);
        a.get(r, c).clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm6v::{asm_to_sixv, enumerate_asm, validate_asm};

    #[test]
    fn tau_fixes_identity() {
        let id = AlternatingSignMatrix::identity(4);
        assert_eq!(symmetry_transform(&id, Symmetry::Tau), id);
    }

    #[test]
    fn sigma_has_order_four() {
        for b in enumerate_asm(3).unwrap() {
            let mut x = b.clone();
            for _ in 0..4 {
                x = symmetry_transform(&x, Symmetry::Sigma);
            }
            assert_eq!(x, b);
        }
    }

    #[test]
    fn sigma_of_identity_is_anti_identity() {
        let s = symmetry_transform(&AlternatingSignMatrix::identity(3), Symmetry::Sigma);
        assert_eq!(s, AlternatingSignMatrix::anti_identity(3));
        let rows = vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]];
        assert!(validate_asm(&rows).is_ok());
    }

    #[test]
    fn grids_commute_with_symmetries_n4() {
        for b in enumerate_asm(4).unwrap() {
            for phi in [Symmetry::Sigma, Symmetry::Tau] {
                let lhs = asm_to_sixv(&symmetry_transform(&b, phi));
                let rhs = transform_grid(&asm_to_sixv(&b), phi);
                assert_eq!(lhs, rhs, "{phi:?} on {b:?}");
            }
        }
    }
}
