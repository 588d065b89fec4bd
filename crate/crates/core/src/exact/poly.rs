use super::{Rational, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

/// Ordered list of variable names shared by all polynomials of one computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Arc<VarSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(VarSet { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// Sparse Laurent polynomial with integer coefficients.
///
/// Terms are keyed by dense exponent vectors (one slot per registered variable)
/// in a `BTreeMap`, so the lexicographic term order and therefore equality are
/// structural. Zero coefficients are never stored.
#[derive(Clone)]
pub struct LaurentPolynomial {
    vars: Arc<VarSet>,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

/// Serialized form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    pub exponents: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    variables: Vec<String>,
    terms: Vec<Term>,
}

impl LaurentPolynomial {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        LaurentPolynomial {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Ok(Self::monomial(vars, 1, exps))
    }

    pub fn monomial(vars: &Arc<VarSet>, coeff: impl Into<BigInt>, exponents: Vec<i32>) -> Self {
        assert_eq!(exponents.len(), vars.len(), "exponent vector length");
        let coeff = coeff.into();
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging duplicates.
    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, Vec<i32>)>,
    {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            if e.len() != vars.len() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    vars.len()
                )));
            }
            p.accumulate(e, c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, exps: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[i32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn same_vars(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars.names == other.vars.names
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_vars(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_vars(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_vars(rhs)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.accumulate(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Exact division by a single term.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check_vars(rhs)?;
        if rhs.terms.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if rhs.terms.len() != 1 {
            return Err(Error::NonMonomialDivisor(rhs.to_string()));
        }
        let (de, dc) = rhs.terms.iter().next().unwrap();
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(dc);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{c} by {dc}")));
            }
            let e: Vec<i32> = e.iter().zip(de).map(|(a, b)| a - b).collect();
            out.terms.insert(e, q);
        }
        Ok(out)
    }

    /// Substitutes rational values for every variable.
    pub fn evaluate(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.vars.len());
        let mut used = vec![false; self.vars.len()];
        for e in self.terms.keys() {
            for (u, &x) in used.iter_mut().zip(e) {
                *u |= x != 0;
            }
        }
        for (name, &is_used) in self.vars.names.iter().zip(&used) {
            match assignment.get(name) {
                Some(v) => values.push(v.clone()),
                None if !is_used => values.push(Rational::one()),
                None => return Err(Error::UnassignedVariable(name.clone())),
            }
        }
        self.evaluate_slice(&values)
    }

    /// Substitutes `values[k]` for the k-th registered variable.
    pub fn evaluate_slice(&self, values: &[Rational]) -> Result<Rational> {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        for e in self.terms.keys() {
            for (k, &x) in e.iter().enumerate() {
                if x < 0 && values[k].is_zero() {
                    return Err(Error::ZeroAtNegativeExponent(self.vars.names[k].clone()));
                }
            }
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = Rational::from_int(c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x != 0 {
                    term = term.times(&values[k].pow_i(x as i64)?);
                }
            }
            total = total.plus(&term);
        }
        Ok(total)
    }

    /// Sets the named variables to 1, keeping the variable set.
    pub fn set_to_one(&self, names: &[&str]) -> Result<Self> {
        let idx: Vec<usize> = names
            .iter()
            .map(|s| self.vars.index_of(s).ok_or_else(|| Error::UnknownVariable(s.to_string())))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            for &k in &idx {
                e[k] = 0;
            }
            out.accumulate(e, c.clone());
        }
        Ok(out)
    }

    /// True iff every coefficient is positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(e, c)| Term {
                coeff: c.to_string(),
                exponents: e.clone(),
            })
            .collect()
    }
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_vars(other) && self.terms == other.terms
    }
}

impl Eq for LaurentPolynomial {}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest term first reads more naturally
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (name, &x) in self.vars.names.iter().zip(e) {
                match x {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{x}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            variables: self.vars.names.clone(),
            terms: self.to_terms(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(d)?;
        let vars = VarSet::new(repr.variables).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            terms.push((c, t.exponents));
        }
        LaurentPolynomial::from_terms(&vars, terms).map_err(D::Error::custom)
    }
}

/// Operations panic on mismatched variable sets; the `checked_*` methods
/// report [`Error::VariableMismatch`] instead.
impl Scalar for LaurentPolynomial {
    fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }

    fn one_like(&self) -> Self {
        Self::constant(&self.vars, 1)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_invertible(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.abs().is_one())
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("variable set mismatch")
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("variable set mismatch")
    }

    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("variable set mismatch")
    }

    fn negate(&self) -> Self {
        LaurentPolynomial {
            vars: Arc::clone(&self.vars),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }

    fn int_like(&self, v: i64) -> Self {
        Self::constant(&self.vars, v)
    }
}
