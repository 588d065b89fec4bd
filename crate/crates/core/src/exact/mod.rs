//! Exact scalar kernel.
//!
//! Three instances share the [`Scalar`] interface: [`Rational`] (the ground
//! field), [`LaurentPolynomial`] (sparse multivariate, integer coefficients,
//! negative exponents allowed) and [`Jet`] (first-order dual numbers over the
//! rationals). Generic algorithms in the rest of the crate are written against
//! the trait, so the same condensation or summation code runs numerically,
//! symbolically or with derivatives.

mod jet;
mod matrix;
mod poly;
mod rational;

pub use jet::Jet;
pub use matrix::{bareiss_det, Matrix};
pub use poly::{LaurentPolynomial, Term, VarSet};
pub use rational::Rational;

use crate::error::Result;
use std::fmt;

/// Ring element with exact (possibly partial) division.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Whether `try_div` by this value is guaranteed to succeed.
    fn is_invertible(&self) -> bool {
        !self.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn try_div(&self, rhs: &Self) -> Result<Self>;

    /// Integer constant in the same context as `self`.
    fn int_like(&self, v: i64) -> Self;

    fn pow_i(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 {
            self.one_like().try_div(self)?
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        Ok(acc)
    }
}

/// Sum of an iterator of scalars; `zero` supplies the context for the empty sum.
pub fn sum_all<'a, S: Scalar>(zero: &S, items: impl IntoIterator<Item = &'a S>) -> S {
    items.into_iter().fold(zero.zero_like(), |acc, x| acc.plus(x))
}
