use super::CoeffWindow;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Shifts handed to the four corner minors of one condensation step.
///
/// Each entry is `(Δλ, Δμ)` for the minors obtained by deleting
/// (first row, first column), (last row, last column), (first row, last
/// column) and (last row, first column). The central minor keeps the parent's
/// shifts under both conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftConvention {
    /// Only μ moves along the main diagonal and only λ along the
    /// anti-diagonal, which keeps each minor aligned with its lattice position
    /// and agrees with the T-system and the ASM sum.
    #[default]
    Lattice,
    /// Both sequences shift in every branch, exactly as the recursion is
    /// usually written. Kept for comparison; disagrees with the other
    /// evaluators for n ≥ 3 with inhomogeneous coefficients.
    Literal,
}

impl ShiftConvention {
    fn deltas(self) -> [(i64, i64); 4] {
        match self {
            ShiftConvention::Lattice => [(0, 1), (0, -1), (-1, 0), (1, 0)],
            ShiftConvention::Literal => [(1, 1), (-1, -1), (-1, 1), (1, -1)],
        }
    }
}

type Key = (usize, usize, usize, i64, i64);

struct Condenser<'a, S: Scalar> {
    a: &'a Matrix<S>,
    coeffs: &'a CoeffWindow<S>,
    deltas: [(i64, i64); 4],
    memo: HashMap<Key, S>,
}

impl<S: Scalar> Condenser<'_, S> {
    /// Value of the `m×m` block at `(r, c)` with extra shifts `(ls, ms)`.
    fn block(&mut self, r: usize, c: usize, m: usize, ls: i64, ms: i64) -> Result<S> {
        match m {
            0 => return Ok(self.a.zero().one_like()),
            1 => return Ok(self.a.get(r, c).clone()),
            _ => {}
        }
        let key = (r, c, m, ls, ms);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let [d11, dnn, d1n, dn1] = self.deltas;
        let a11 = self.block(r + 1, c + 1, m - 1, ls + d11.0, ms + d11.1)?;
        let ann = self.block(r, c, m - 1, ls + dnn.0, ms + dnn.1)?;
        let a1n = self.block(r + 1, c, m - 1, ls + d1n.0, ms + d1n.1)?;
        let an1 = self.block(r, c + 1, m - 1, ls + dn1.0, ms + dn1.1)?;
        let central = self.block(r + 1, c + 1, m - 2, ls, ms)?;
        let num = self
            .coeffs
            .mu_shifted(0, ms)?
            .times(&a11.times(&ann))
            .plus(&self.coeffs.lambda_shifted(0, ls)?.times(&a1n.times(&an1)));
        if central.is_zero() {
            return Err(Error::ZeroDivision(format!(
                "central minor rows {}..{}, columns {}..{}",
                r + 2,
                r + m - 1,
                c + 2,
                c + m - 1
            )));
        }
        let v = num.try_div(&central)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// Generalized Lambda-determinant by condensation on contiguous minors,
/// memoized on (offsets, size, shifts).
pub fn dodgson<S: Scalar>(
    a: &Matrix<S>,
    coeffs: &CoeffWindow<S>,
    convention: ShiftConvention,
) -> Result<S> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let mut c = Condenser {
        a,
        coeffs,
        deltas: convention.deltas(),
        memo: HashMap::new(),
    };
    c.block(0, 0, a.rows(), 0, 0)
}
