use crate::asm6v::Symmetry;
use crate::error::{Error, Result};
use crate::exact::{LaurentPolynomial, Rational, Scalar, VarSet};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

/// Finite window of the coefficient sequences `(λ_a)` and `(μ_b)`.
///
/// Lookups add the window's shift to the requested index, so `with_shift`
/// realizes powers of the shift operator without copying values. Indices
/// outside the stored keys are errors, never silent defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffWindow<S: Scalar> {
    lambda: BTreeMap<i64, S>,
    mu: BTreeMap<i64, S>,
    lambda_shift: i64,
    mu_shift: i64,
}

impl<S: Scalar> CoeffWindow<S> {
    pub fn new(lambda: BTreeMap<i64, S>, mu: BTreeMap<i64, S>) -> Result<Self> {
        for (which, map) in [("lambda", &lambda), ("mu", &mu)] {
            if let Some((k, _)) = map.iter().find(|(_, v)| v.is_zero()) {
                return Err(Error::InvalidArgument(format!("{which}_{k} is zero")));
            }
        }
        Ok(CoeffWindow {
            lambda,
            mu,
            lambda_shift: 0,
            mu_shift: 0,
        })
    }

    pub fn from_fn(
        range: RangeInclusive<i64>,
        mut lambda: impl FnMut(i64) -> S,
        mut mu: impl FnMut(i64) -> S,
    ) -> Result<Self> {
        Self::new(
            range.clone().map(|a| (a, lambda(a))).collect(),
            range.map(|b| (b, mu(b))).collect(),
        )
    }

    /// Constant sequences on `[1−n, n−1]`.
    pub fn homogeneous(n: usize, lambda: S, mu: S) -> Result<Self> {
        Self::from_fn(full_range(n), |_| lambda.clone(), |_| mu.clone())
    }

    /// `λ_a = μ_a = q^a` on `range`.
    pub fn q_power(range: RangeInclusive<i64>, q: &S) -> Result<Self> {
        let mut powers = BTreeMap::new();
        for a in range {
            powers.insert(a, q.pow_i(a)?);
        }
        Self::new(powers.clone(), powers)
    }

    fn lookup<'a>(map: &'a BTreeMap<i64, S>, which: &'static str, index: i64) -> Result<&'a S> {
        map.get(&index).ok_or(Error::WindowMiss { which, index })
    }

    pub fn lambda(&self, a: i64) -> Result<&S> {
        Self::lookup(&self.lambda, "lambda", a + self.lambda_shift)
    }

    pub fn mu(&self, b: i64) -> Result<&S> {
        Self::lookup(&self.mu, "mu", b + self.mu_shift)
    }

    /// `λ_{a+extra}` on top of the window's own shift.
    pub fn lambda_shifted(&self, a: i64, extra: i64) -> Result<&S> {
        self.lambda(a + extra)
    }

    pub fn mu_shifted(&self, b: i64, extra: i64) -> Result<&S> {
        self.mu(b + extra)
    }

    pub fn shifts(&self) -> (i64, i64) {
        (self.lambda_shift, self.mu_shift)
    }

    /// Applies `s^dl` to λ and `s^dm` to μ.
    pub fn with_shift(&self, dl: i64, dm: i64) -> Self {
        let mut w = self.clone();
        w.lambda_shift += dl;
        w.mu_shift += dm;
        w
    }

    /// Effective `(index, value)` pairs for λ.
    pub fn lambda_entries(&self) -> impl Iterator<Item = (i64, &S)> {
        self.lambda.iter().map(move |(k, v)| (k - self.lambda_shift, v))
    }

    pub fn mu_entries(&self) -> impl Iterator<Item = (i64, &S)> {
        self.mu.iter().map(move |(k, v)| (k - self.mu_shift, v))
    }

    /// Requires every λ_a and μ_a for `a` in `range`.
    pub fn require(&self, range: RangeInclusive<i64>) -> Result<()> {
        for a in range {
            if self.lambda(a).is_err() {
                return Err(Error::WindowTooSmall { which: "lambda", index: a });
            }
            if self.mu(a).is_err() {
                return Err(Error::WindowTooSmall { which: "mu", index: a });
            }
        }
        Ok(())
    }

    /// Window that the Lambda-determinant of an n×n matrix reads.
    pub fn require_for(&self, n: usize) -> Result<()> {
        self.require(needed_range(n))
    }

    /// Coefficients matching a σ- or τ-transformed matrix:
    /// `σ(λ)_a = μ_{−a}`, `σ(μ)_a = λ_a`, `τ(λ)_a = λ_{−a}`, `τ(μ)_a = μ_a`.
    pub fn transform(&self, phi: Symmetry) -> Self {
        let lam: BTreeMap<i64, S> = self.lambda_entries().map(|(k, v)| (k, v.clone())).collect();
        let mu: BTreeMap<i64, S> = self.mu_entries().map(|(k, v)| (k, v.clone())).collect();
        let reflect = |m: &BTreeMap<i64, S>| m.iter().map(|(k, v)| (-k, v.clone())).collect();
        let (lambda, mu) = match phi {
            Symmetry::Sigma => (reflect(&mu), lam),
            Symmetry::Tau => (reflect(&lam), mu),
        };
        CoeffWindow {
            lambda,
            mu,
            lambda_shift: 0,
            mu_shift: 0,
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CoeffWindow<T> {
        CoeffWindow {
            lambda: self.lambda.iter().map(|(k, v)| (*k, f(v))).collect(),
            mu: self.mu.iter().map(|(k, v)| (*k, f(v))).collect(),
            lambda_shift: self.lambda_shift,
            mu_shift: self.mu_shift,
        }
    }
}

/// `[1−n, n−1]`, the range stored by generated windows.
pub fn full_range(n: usize) -> RangeInclusive<i64> {
    let n = n as i64;
    (1 - n)..=(n - 1)
}

/// `[2−n, n−2]`, the range actually read for an n×n matrix.
pub fn needed_range(n: usize) -> RangeInclusive<i64> {
    let n = n as i64;
    (2 - n)..=(n - 2)
}

pub fn lambda_name(a: i64) -> String {
    format!("λ{a}")
}

pub fn mu_name(b: i64) -> String {
    format!("μ{b}")
}

impl CoeffWindow<LaurentPolynomial> {
    /// Generic window with one variable per coefficient, drawn from `vars`.
    pub fn symbolic(vars: &Arc<VarSet>, range: RangeInclusive<i64>) -> Result<Self> {
        let mut lambda = BTreeMap::new();
        let mut mu = BTreeMap::new();
        for a in range {
            lambda.insert(a, LaurentPolynomial::var(vars, &lambda_name(a))?);
            mu.insert(a, LaurentPolynomial::var(vars, &mu_name(a))?);
        }
        Self::new(lambda, mu)
    }
}

#[derive(Serialize, Deserialize)]
struct WindowRepr<S> {
    lambda: BTreeMap<i64, S>,
    mu: BTreeMap<i64, S>,
}

impl Serialize for CoeffWindow<Rational> {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        WindowRepr {
            lambda: self.lambda_entries().map(|(k, v)| (k, v.clone())).collect(),
            mu: self.mu_entries().map(|(k, v)| (k, v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffWindow<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WindowRepr::<Rational>::deserialize(d)?;
        CoeffWindow::new(repr.lambda, repr.mu).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn shifted_lookup() {
        let w = CoeffWindow::from_fn(-2..=2, |a| q(a + 10), |b| q(10 * b + 1)).unwrap();
        assert_eq!(w.lambda(1).unwrap(), &q(11));
        let s = w.with_shift(1, -1);
        assert_eq!(s.lambda(1).unwrap(), &q(12));
        assert_eq!(s.mu(1).unwrap(), &q(1));
        assert_eq!(
            s.lambda(2),
            Err(Error::WindowMiss { which: "lambda", index: 3 })
        );
    }

    #[test]
    fn coverage() {
        let w = CoeffWindow::homogeneous(2, q(1), q(1)).unwrap();
        assert!(w.require_for(3).is_ok());
        assert_eq!(
            w.require_for(4),
            Err(Error::WindowTooSmall { which: "lambda", index: -2 })
        );
        assert!(CoeffWindow::homogeneous(2, q(0), q(1)).is_err());
    }

    #[test]
    fn sigma_and_tau() {
        let w = CoeffWindow::from_fn(-2..=2, |a| q(a + 20), |b| q(10 + b)).unwrap();
        let s = w.transform(Symmetry::Sigma);
        assert_eq!(s.lambda(1).unwrap(), &q(9));
        assert_eq!(s.mu(-2).unwrap(), &q(18));
        let t = w.transform(Symmetry::Tau);
        assert_eq!(t.lambda(2).unwrap(), &q(18));
        assert_eq!(t.mu(2).unwrap(), &q(12));
    }

    #[test]
    fn json_shape() {
        let w: CoeffWindow<Rational> =
            serde_json::from_str(r#"{"lambda": {"-1": "1/2", "0": "2"}, "mu": {"0": "-3/4"}}"#).unwrap();
        assert_eq!(w.lambda(-1).unwrap(), &Rational::new(1, 2).unwrap());
        let back = serde_json::to_string(&w).unwrap();
        assert_eq!(back, r#"{"lambda":{"-1":"1/2","0":"2"},"mu":{"0":"-3/4"}}"#);
    }
}
