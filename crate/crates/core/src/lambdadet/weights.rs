use crate::asm6v::{asm_to_sixv, enumerate_asm_with_cap, statistics, AlternatingSignMatrix, VertexType};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::tsystem::{needed_range, CoeffWindow};
use rayon::prelude::*;
use serde::Serialize;

/// Contribution of one ASM to the Lambda-determinant.
///
/// `factors[i][j]` is `a_{i,j}^{b_{i,j}}` times the coefficient attached to
/// the six-vertex type at that cell; `monomial` and `coefficient` are the
/// products of the two parts, `total` their product.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightBreakdown<S> {
    pub asm: AlternatingSignMatrix,
    pub monomial: S,
    pub coefficient: S,
    pub factors: Vec<Vec<S>>,
    pub total: S,
}

/// Coefficient lookup restricted to `[2−n, n−2]`.
///
/// Cells whose diagonal index leaves that range never carry a non-trivial
/// coefficient in a valid ASM; reaching one is reported, not defaulted.
fn inner<'a, S: Scalar>(
    coeffs: &'a CoeffWindow<S>,
    n: usize,
    which: &'static str,
    index: i64,
) -> Result<&'a S> {
    if !needed_range(n).contains(&index) {
        return Err(Error::WindowMiss { which, index });
    }
    match which {
        "lambda" => coeffs.lambda(index),
        _ => coeffs.mu(index),
    }
}

fn entry_power<S: Scalar>(a: &Matrix<S>, i: usize, j: usize, b: i8) -> Result<S> {
    let x = a.get(i, j);
    match b {
        1 => Ok(x.clone()),
        -1 => {
            if x.is_zero() {
                return Err(Error::ZeroEntryAtMinus(i + 1, j + 1));
            }
            x.one_like().try_div(x)
        }
        _ => Ok(x.one_like()),
    }
}

pub fn asm_weight<S: Scalar>(
    b: &AlternatingSignMatrix,
    a: &Matrix<S>,
    coeffs: &CoeffWindow<S>,
) -> Result<WeightBreakdown<S>> {
    let n = b.n();
    if a.rows() != n || a.cols() != n {
        return Err(Error::InvalidArgument(format!(
            "ASM of size {n} against a {}×{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let one = a.zero().one_like();
    let grid = asm_to_sixv(b);
    let mut monomial = one.clone();
    let mut coefficient = one.clone();
    let mut factors = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let (i, j) = (r as i64 + 1, c as i64 + 1);
            let d = j - i;
            let e = i + j - n as i64 - 1;
            let coef = match grid.get(r, c) {
                VertexType::A1 => inner(coeffs, n, "lambda", d)?.clone(),
                VertexType::B1 => inner(coeffs, n, "mu", e)?.clone(),
                VertexType::C2 => inner(coeffs, n, "lambda", d)?.plus(inner(coeffs, n, "mu", e)?),
                _ => one.clone(),
            };
            let power = entry_power(a, r, c, b.get(r, c))?;
            monomial = monomial.times(&power);
            coefficient = coefficient.times(&coef);
            row.push(power.times(&coef));
        }
        factors.push(row);
    }
    Ok(WeightBreakdown {
        asm: b.clone(),
        total: monomial.times(&coefficient),
        monomial,
        coefficient,
        factors,
    })
}

/// Sums `term(B)` over all ASMs of size `n`, in parallel, reporting the
/// first error in enumeration order.
pub(crate) fn sum_over_asms<S: Scalar>(
    n: usize,
    cap: usize,
    zero: &S,
    term: impl Fn(&AlternatingSignMatrix) -> Result<S> + Sync,
) -> Result<S> {
    let asms: Vec<AlternatingSignMatrix> = enumerate_asm_with_cap(n, cap)?.collect();
    let parts: Vec<Result<S>> = asms.par_iter().map(&term).collect();
    let mut acc = zero.zero_like();
    for p in parts {
        acc = acc.plus(&p?);
    }
    Ok(acc)
}

/// Default largest size for the full ASM sum.
pub const ASM_SUM_CAP: usize = 6;

/// `Σ_B ∏ w_{i,j}` over all `n × n` ASMs.
pub fn asm_sum<S: Scalar>(a: &Matrix<S>, coeffs: &CoeffWindow<S>) -> Result<S> {
    asm_sum_with_cap(a, coeffs, crate::enumeration_cap(ASM_SUM_CAP))
}

pub fn asm_sum_with_cap<S: Scalar>(a: &Matrix<S>, coeffs: &CoeffWindow<S>, cap: usize) -> Result<S> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    coeffs.require_for(a.rows())?;
    sum_over_asms(a.rows(), cap, a.zero(), |b| Ok(asm_weight(b, a, coeffs)?.total))
}

/// The same sum regrouped by ASM statistics:
/// `∏_a λ_a^{I_a} μ_a^{I'_a} · ∏ a^b · ∏_{−1 cells} (λ_{j−i} + μ_{i+j−n−1})`.
pub fn statistics_form<S: Scalar>(a: &Matrix<S>, coeffs: &CoeffWindow<S>) -> Result<S> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let n = a.rows();
    coeffs.require_for(n)?;
    let cap = crate::enumeration_cap(ASM_SUM_CAP);
    sum_over_asms(n, cap, a.zero(), |b| {
        let st = statistics(b);
        let mut w = a.zero().one_like();
        for (&k, &e) in &st.i {
            w = w.times(&inner(coeffs, n, "lambda", k)?.pow_i(e as i64)?);
        }
        for (&k, &e) in &st.i_prime {
            w = w.times(&inner(coeffs, n, "mu", k)?.pow_i(e as i64)?);
        }
        for &(i, j) in &st.minus_positions {
            let (i, j) = (i as i64, j as i64);
            let s = inner(coeffs, n, "lambda", j - i)?.plus(inner(coeffs, n, "mu", i + j - n as i64 - 1)?);
            w = w.times(&s);
        }
        for r in 0..n {
            for c in 0..n {
                w = w.times(&entry_power(a, r, c, b.get(r, c))?);
            }
        }
        Ok(w)
    })
}

/// One-parameter formula `Σ_B λ^{Inv(B)} (1 + λ^{−1})^{#(−1)} ∏ a^b`,
/// i.e. the case `λ_a = λ`, `μ_a = 1`.
pub fn robbins_rumsey<S: Scalar>(a: &Matrix<S>, lambda: &S) -> Result<S> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if lambda.is_zero() {
        return Err(Error::InvalidArgument("λ must be non-zero".into()));
    }
    let n = a.rows();
    let one = a.zero().one_like();
    let shifted = one.plus(&one.try_div(lambda)?);
    sum_over_asms(n, crate::enumeration_cap(ASM_SUM_CAP), a.zero(), |b| {
        let st = statistics(b);
        let mut w = lambda.pow_i(st.inv)?.times(&shifted.pow_i(st.minus_count as i64)?);
        for r in 0..n {
            for c in 0..n {
                w = w.times(&entry_power(a, r, c, b.get(r, c))?);
            }
        }
        Ok(w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm6v::{enumerate_asm, validate_asm};
    use crate::exact::{bareiss_det, LaurentPolynomial, Rational, VarSet};
    use crate::testutil::{nondegenerate, q, rand_matrix};
    use crate::tsystem::{dodgson, lambda_name, mu_name, ShiftConvention};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    /// `a..k` for the 3×3 entries plus λ_{−1..1}, μ_{−1..1}.
    fn letters() -> (Arc<VarSet>, Matrix<LaurentPolynomial>, CoeffWindow<LaurentPolynomial>) {
        let mut names: Vec<String> = "abcdefghk".chars().map(String::from).collect();
        for x in -1..=1 {
            names.push(lambda_name(x));
            names.push(mu_name(x));
        }
        let vars = VarSet::new(names).unwrap();
        let v = |s: &str| LaurentPolynomial::var(&vars, s).unwrap();
        let rows = ["abc", "def", "ghk"]
            .iter()
            .map(|r| r.chars().map(|c| v(&c.to_string())).collect())
            .collect();
        let a = Matrix::from_rows(&v("a").zero_like(), rows).unwrap();
        let w = CoeffWindow::symbolic(&vars, -1..=1).unwrap();
        (vars, a, w)
    }

    fn p(vars: &Arc<VarSet>, s: &str) -> LaurentPolynomial {
        // products of names separated by '*', each optionally inverted with '/'
        let mut acc = LaurentPolynomial::constant(vars, 1);
        for tok in s.split('*') {
            if let Some(d) = tok.strip_prefix('/') {
                acc = acc.try_div(&LaurentPolynomial::var(vars, d).unwrap()).unwrap();
            } else {
                acc = acc.times(&LaurentPolynomial::var(vars, tok).unwrap());
            }
        }
        acc
    }

    fn asm(rows: &[&[i64]]) -> AlternatingSignMatrix {
        validate_asm(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn named_weights() {
        let (vars, a, w) = letters();
        let id = asm_weight(&AlternatingSignMatrix::identity(3), &a, &w).unwrap();
        assert_eq!(id.total, p(&vars, "μ1*μ0*μ-1*a*e*k"));
        let anti = asm_weight(&AlternatingSignMatrix::anti_identity(3), &a, &w).unwrap();
        assert_eq!(anti.total, p(&vars, "λ1*λ0*λ-1*c*e*g"));
        let diamond = asm(&[&[0, 1, 0], &[1, -1, 1], &[0, 1, 0]]);
        let d = asm_weight(&diamond, &a, &w).unwrap();
        let l0 = p(&vars, "λ0");
        let m0 = p(&vars, "μ0");
        assert_eq!(d.coefficient, l0.times(&m0).times(&l0.plus(&m0)));
        assert_eq!(d.monomial, p(&vars, "b*d*f*h*/e"));
        let prod = d.factors.iter().flatten().fold(p(&vars, "a").one_like(), |x, y| x.times(y));
        assert_eq!(prod, d.total);
    }

    #[test]
    fn seven_term_display() {
        let (vars, a, w) = letters();
        let got = asm_sum(&a, &w).unwrap();
        let l0 = p(&vars, "λ0");
        let m0 = p(&vars, "μ0");
        let terms = [
            p(&vars, "μ1*μ0*μ-1*a*e*k"),
            p(&vars, "λ0*μ0*μ1*b*d*k"),
            p(&vars, "λ0*μ0*μ-1*a*f*h"),
            p(&vars, "λ1*λ0*μ0*c*d*h"),
            p(&vars, "λ0*λ-1*μ0*b*f*g"),
            p(&vars, "λ1*λ0*λ-1*c*e*g"),
            l0.times(&m0).times(&l0.plus(&m0)).times(&p(&vars, "b*d*f*h*/e")),
        ];
        let want = terms.iter().fold(l0.zero_like(), |acc, t| acc.plus(t));
        assert_eq!(got, want);
        assert_eq!(statistics_form(&a, &w).unwrap(), want);
        assert!(got.has_positive_coefficients());
    }

    #[test]
    fn all_ones_gives_eight() {
        let a = Matrix::from_fn(&q(0), 3, 3, |_, _| q(1));
        let w = CoeffWindow::homogeneous(3, q(1), q(1)).unwrap();
        assert_eq!(asm_sum(&a, &w).unwrap(), q(8));
    }

    #[test]
    fn random_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=5 {
            for _ in 0..4 {
                let (a, w) = nondegenerate(n, &mut rng);
                let s = asm_sum(&a, &w).unwrap();
                assert_eq!(statistics_form(&a, &w).unwrap(), s);
                assert_eq!(dodgson(&a, &w, ShiftConvention::Lattice).unwrap(), s);
            }
        }
    }

    #[test]
    fn robbins_rumsey_specialization() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=5 {
            let a = rand_matrix(n, &mut rng);
            let lam: Rational = "3/2".parse().unwrap();
            let w = CoeffWindow::homogeneous(n, lam.clone(), q(1)).unwrap();
            assert_eq!(robbins_rumsey(&a, &lam).unwrap(), asm_sum(&a, &w).unwrap());
            assert_eq!(robbins_rumsey(&a, &q(-1)).unwrap(), bareiss_det(&a).unwrap());
        }
    }

    #[test]
    fn extreme_diagonals_never_weighted() {
        // any ASM; the window only covers [2−n, n−2] and must suffice
        let a = Matrix::from_fn(&q(0), 4, 4, |_, _| q(2));
        let w = CoeffWindow::from_fn(-2..=2, |x| q(x + 5), |x| q(x + 7)).unwrap();
        for b in enumerate_asm(4).unwrap() {
            asm_weight(&b, &a, &w).unwrap();
        }
    }

    #[test]
    fn minus_on_zero_entry() {
        let mut a = Matrix::from_fn(&q(0), 3, 3, |_, _| q(1));
        a.set(1, 1, q(0));
        let w = CoeffWindow::homogeneous(3, q(1), q(1)).unwrap();
        assert_eq!(asm_sum(&a, &w).unwrap_err(), Error::ZeroEntryAtMinus(2, 2));
        // a zero off the interior is harmless
        let mut b = Matrix::from_fn(&q(0), 3, 3, |_, _| q(1));
        b.set(0, 0, q(0));
        assert_eq!(asm_sum(&b, &w).unwrap(), dodgson(&b, &w, ShiftConvention::Lattice).unwrap());
    }

    #[test]
    fn cap_respected() {
        let a = Matrix::from_fn(&q(0), 4, 4, |_, _| q(1));
        let w = CoeffWindow::homogeneous(4, q(1), q(1)).unwrap();
        assert!(matches!(
            asm_sum_with_cap(&a, &w, 3),
            Err(Error::CapExceeded { n: 4, cap: 3 })
        ));
    }
}
