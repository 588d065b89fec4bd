use crate::error::Result;
use crate::exact::{Rational, Scalar};

fn one_plus_pow(q: &Rational, a: i64) -> Result<Rational> {
    Ok(Rational::one().plus(&q.pow_i(a)?))
}

/// Closed form of `T_{i,j,k}` for `λ_a = μ_a = q^a` and `T_{i,j,0} = T_{i,j,1} = 1`,
/// evaluated term by term (empty products are 1).
pub fn soltij_closed_form(i: i64, j: i64, k: i64, q: &Rational) -> Result<Rational> {
    let d = (i - j).abs();
    let mut v = q.pow_i(k * (k - 1) / 2 * i.min(j))?;
    for m in 1..=(k - d).div_euclid(2) {
        for a in (2 * m - k + d)..=(k - d - 2 * m) {
            v = v.times(&one_plus_pow(q, a)?);
        }
    }
    for m in 1..=d {
        for a in m..=(k - d + 2 * m - 2) {
            v = v.times(&one_plus_pow(q, a)?);
        }
    }
    Ok(v)
}

/// `∏_{m=1}^{⌊n/2⌋} ∏_{j=2m−n}^{n−2m} (1 + q^j)`.
pub fn q_product(n: usize, q: &Rational) -> Result<Rational> {
    let n = n as i64;
    let mut v = Rational::one();
    for m in 1..=n / 2 {
        for j in (2 * m - n)..=(n - 2 * m) {
            v = v.times(&one_plus_pow(q, j)?);
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsystem::{evolve, CoeffWindow, InitialData};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn initial_layers_are_one() {
        for (i, j) in [(0, 0), (3, -2), (-4, 1)] {
            assert_eq!(soltij_closed_form(i, j, 0, &r("2")).unwrap(), r("1"));
            assert_eq!(soltij_closed_form(i, j, 1, &r("2")).unwrap(), r("1"));
        }
    }

    #[test]
    fn small_products() {
        assert_eq!(q_product(2, &r("7/3")).unwrap(), r("2"));
        assert_eq!(q_product(3, &r("2")).unwrap(), r("9"));
        assert_eq!(q_product(5, &r("1")).unwrap(), r("1024"));
        assert_eq!(soltij_closed_form(0, 0, 3, &r("2")).unwrap(), r("9"));
    }

    #[test]
    fn matches_evolution_off_centre() {
        let q = r("3/2");
        let (i, j, k) = (1, -2, 4);
        let init = InitialData::new(k as usize, (i, j), &Rational::one(), |_, _| Rational::one());
        let w = CoeffWindow::q_power(-8..=8, &q).unwrap();
        let dp = evolve(&init, &w, (i, j, k as usize)).unwrap().0;
        assert_eq!(soltij_closed_form(i, j, k, &q).unwrap(), dp);
    }
}
