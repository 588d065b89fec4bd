use crate::error::{Error, Result};
use crate::exact::{bareiss_det, Matrix, Rational, Scalar};
use crate::network::{build_network, FaceLabels};
use crate::tsystem::CoeffWindow;
use num_bigint::BigInt;
use serde::Serialize;

/// `(a_i^{j−1})`.
pub fn vandermonde_matrix(a: &[Rational]) -> Matrix<Rational> {
    let n = a.len();
    Matrix::from_fn(&Rational::zero(), n, n, |i, j| {
        a[i].pow_i(j as i64).expect("non-negative power")
    })
}

/// `∏_{i<j} (λ a_i + μ a_j)`.
pub fn vandermonde_product(a: &[Rational], lambda: &Rational, mu: &Rational) -> Rational {
    let mut v = Rational::one();
    for j in 0..a.len() {
        for i in 0..j {
            v = v.times(&lambda.times(&a[i]).plus(&mu.times(&a[j])));
        }
    }
    v
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::from(1);
    for t in 0..k {
        c = c * (n - t) / (t + 1);
    }
    c
}

/// `B(α, β)_{i,j} = C(j, i) α^i β^{j−i}` for `0 ≤ i ≤ j < n`, zero below.
pub fn b_matrix(n: usize, alpha: &Rational, beta: &Rational) -> Matrix<Rational> {
    Matrix::from_fn(&Rational::zero(), n, n, |i, j| {
        if i > j {
            return Rational::zero();
        }
        Rational::from(binomial(j, i))
            .times(&alpha.pow_i(i as i64).expect("power"))
            .times(&beta.pow_i((j - i) as i64).expect("power"))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LuReport {
    pub n: usize,
    pub lambda: Rational,
    pub mu: Rational,
    pub determinant: Rational,
    pub expected: Rational,
}

impl LuReport {
    pub fn passed(&self) -> bool {
        self.determinant == self.expected
    }
}

/// Checks `Z = B(1,1)^t B(λ+μ, λ)` entrywise on the all-ones network and
/// that `det Z = (λ+μ)^{n(n−1)/2}`.
pub fn homogeneous_lu_check(n: usize, lambda: &Rational, mu: &Rational) -> Result<LuReport> {
    let ones = Matrix::from_fn(&Rational::zero(), n, n, |_, _| Rational::one());
    let w = CoeffWindow::homogeneous(n, lambda.clone(), mu.clone())?;
    let z = build_network(FaceLabels::Matrix(&ones), &w)?.partition_matrix();
    let lu = b_matrix(n, &Rational::one(), &Rational::one())
        .transpose()
        .mul(&b_matrix(n, &lambda.plus(mu), lambda))?;
    if let Some((i, j)) = z.first_difference(&lu) {
        return Err(Error::Mismatch {
            location: format!("Z_({},{})", i + 1, j + 1),
            left: z.get(i, j).to_string(),
            right: lu.get(i, j).to_string(),
        });
    }
    Ok(LuReport {
        n,
        lambda: lambda.clone(),
        mu: mu.clone(),
        determinant: bareiss_det(&z)?,
        expected: lambda.plus(mu).pow_i((n * n.saturating_sub(1) / 2) as i64)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambdadet::{asm_sum, robbins_rumsey};
    use crate::testutil::{q, rnd};
    use crate::tsystem::{dodgson, lambda_det_via_tsystem, ShiftConvention};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(vandermonde_product(&[q(2), q(3)], &q(1), &q(1)), q(5));
        assert_eq!(vandermonde_product(&[q(1), q(2), q(3)], &q(2), &q(1)), q(140));
        assert_eq!(
            robbins_rumsey(&vandermonde_matrix(&[q(1), q(2), q(3)]), &q(2)).unwrap(),
            q(140)
        );
        for n in 1..=6 {
            let a = vec![q(1); n];
            assert_eq!(
                vandermonde_product(&a, &q(1), &q(1)),
                q(2).pow_i((n * (n - 1) / 2) as i64).unwrap()
            );
        }
    }

    #[test]
    fn vandermonde_matches_evaluators() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=5 {
            let a: Vec<Rational> = (0..n).map(|_| rnd(&mut rng)).collect();
            let (l, m) = (rnd(&mut rng), rnd(&mut rng));
            let v = vandermonde_matrix(&a);
            let w = CoeffWindow::homogeneous(n, l.clone(), m.clone()).unwrap();
            let want = vandermonde_product(&a, &l, &m);
            assert_eq!(dodgson(&v, &w, ShiftConvention::Lattice).unwrap(), want);
            assert_eq!(lambda_det_via_tsystem(&v, &w).unwrap(), want);
            assert_eq!(asm_sum(&v, &w).unwrap(), want);
        }
    }

    #[test]
    fn lu_reports() {
        let rep = homogeneous_lu_check(3, &q(1), &q(1)).unwrap();
        assert_eq!(rep.determinant, q(8));
        assert!(rep.passed());
        let rep = homogeneous_lu_check(5, &q(2), &q(3)).unwrap();
        assert_eq!(rep.determinant, q(5).pow_i(10).unwrap());
        assert!(homogeneous_lu_check(6, &q(1), &q(2)).unwrap().passed());
        assert!(homogeneous_lu_check(4, &r("-2/3"), &r("5/7")).unwrap().passed());
    }

    #[test]
    fn binomials() {
        let b = b_matrix(4, &q(1), &q(1));
        assert_eq!(b.get(1, 3), &q(3));
        assert_eq!(b.get(2, 3), &q(3));
        assert_eq!(b.get(3, 1), &q(0));
    }
}
