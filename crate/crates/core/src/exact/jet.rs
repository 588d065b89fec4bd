use super::{Rational, Scalar};
use crate::error::{Error, Result};
use std::fmt;

/// First-order jet `value + derivative·ε` with `ε² = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Jet {
    pub value: Rational,
    pub derivative: Rational,
}

impl Jet {
    pub fn new(value: Rational, derivative: Rational) -> Self {
        Jet { value, derivative }
    }

    pub fn constant(value: Rational) -> Self {
        Jet {
            value,
            derivative: Rational::zero(),
        }
    }

    /// `value + ε`, the seed of a derivative computation.
    pub fn variable(value: Rational) -> Self {
        Jet {
            value,
            derivative: Rational::one(),
        }
    }

    /// Logarithmic derivative `derivative / value`.
    pub fn log_derivative(&self) -> Result<Rational> {
        self.derivative.try_div(&self.value)
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.value, self.derivative)
    }
}

impl Scalar for Jet {
    fn zero_like(&self) -> Self {
        Jet::default()
    }

    fn one_like(&self) -> Self {
        Jet::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.derivative.is_zero()
    }

    fn is_invertible(&self) -> bool {
        !self.value.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        Jet::new(self.value.plus(&rhs.value), self.derivative.plus(&rhs.derivative))
    }

    fn minus(&self, rhs: &Self) -> Self {
        Jet::new(self.value.minus(&rhs.value), self.derivative.minus(&rhs.derivative))
    }

    fn times(&self, rhs: &Self) -> Self {
        Jet::new(
            self.value.times(&rhs.value),
            self.value
                .times(&rhs.derivative)
                .plus(&self.derivative.times(&rhs.value)),
        )
    }

    fn negate(&self) -> Self {
        Jet::new(self.value.negate(), self.derivative.negate())
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = self.value.try_div(&rhs.value)?;
        // (a + bε)/(c + dε) = a/c + (bc - ad)/c² ε
        let num = self
            .derivative
            .times(&rhs.value)
            .minus(&self.value.times(&rhs.derivative));
        let derivative = num.try_div(&rhs.value.times(&rhs.value))?;
        Ok(Jet::new(value, derivative))
    }

    fn int_like(&self, v: i64) -> Self {
        Jet::constant(Rational::from_int(v))
    }
}
