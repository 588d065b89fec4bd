use crate::error::{Error, Result};
use crate::exact::{Rational, Scalar};
use std::collections::BTreeMap;

/// Coefficients of `Z / (1 + Z² − Z(p(X+X⁻¹) + r(Y+Y⁻¹)))` with
/// `p = λ/(λ+μ)`, `r = μ/(λ+μ)`, keyed `(i, j, k)` for `k ≤ k_max`.
/// Zero coefficients are omitted.
pub fn series_table(k_max: usize, lambda: &Rational, mu: &Rational) -> Result<BTreeMap<(i64, i64, i64), Rational>> {
    let s = lambda.plus(mu);
    if s.is_zero() {
        return Err(Error::InvalidArgument("λ + μ must be non-zero".into()));
    }
    let p = lambda.try_div(&s)?;
    let r = mu.try_div(&s)?;
    let mut c: BTreeMap<(i64, i64, i64), Rational> = BTreeMap::new();
    let zero = Rational::zero();
    for k in 1..=k_max as i64 {
        let reach = k - 1;
        for i in -reach..=reach {
            let w = reach - i.abs();
            for j in -w..=w {
                let get = |a: i64, b: i64, kk: i64| c.get(&(a, b, kk)).unwrap_or(&zero).clone();
                let mut v = if (i, j, k) == (0, 0, 1) { Rational::one() } else { Rational::zero() };
                v = v.minus(&get(i, j, k - 2));
                v = v.plus(&p.times(&get(i - 1, j, k - 1).plus(&get(i + 1, j, k - 1))));
                v = v.plus(&r.times(&get(i, j - 1, k - 1).plus(&get(i, j + 1, k - 1))));
                if !v.is_zero() {
                    c.insert((i, j, k), v);
                }
            }
        }
    }
    Ok(c)
}

/// Single coefficient `[X^i Y^j Z^k]`; zero for `k ≤ 0`.
pub fn rho_series_coeff(i: i64, j: i64, k: i64, lambda: &Rational, mu: &Rational) -> Result<Rational> {
    if k <= 0 {
        return Ok(Rational::zero());
    }
    Ok(series_table(k as usize, lambda, mu)?
        .remove(&(i, j, k))
        .unwrap_or_else(Rational::zero))
}
