use super::Scalar;
use crate::error::{Error, Result};
use std::fmt;

/// Dense row-major matrix over a [`Scalar`], indexed from 0.
///
/// Carries a zero prototype so that empty and polynomial matrices know their
/// scalar context.
#[derive(Clone, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    zero: S,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(zero: &S, rows: usize, cols: usize) -> Self {
        let zero = zero.zero_like();
        Matrix {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
            zero,
        }
    }

    pub fn identity(zero: &S, n: usize) -> Self {
        let mut m = Self::zeros(zero, n, n);
        for i in 0..n {
            m.set(i, i, zero.one_like());
        }
        m
    }

    pub fn from_rows(zero: &S, rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            zero: zero.zero_like(),
        })
    }

    pub fn from_fn(zero: &S, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            zero: zero.zero_like(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero(&self) -> &S {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.zero, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Scalar>(&self, zero: &T, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix::from_fn(zero, self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    /// Contiguous square block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, size: usize) -> Self {
        assert!(r0 + size <= self.rows && c0 + size <= self.cols);
        Self::from_fn(&self.zero, size, size, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn leading(&self, k: usize) -> Self {
        self.block(0, 0, k)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(&self.zero, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Position of the first differing entry, if any.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Every division is exact in the underlying ring. Over Laurent polynomials
/// this only succeeds when each pivot quotient happens to be a monomial.
pub fn bareiss_det<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    if !m.is_square() {
        return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let one = m.zero().one_like();
    if n == 0 {
        return Ok(one);
    }
    let mut a = m.to_rows();
    let mut sign_flip = false;
    let mut prev = one;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| a[r][k].is_invertible()) else {
            if (k..n).all(|r| a[r][k].is_zero()) {
                return Ok(m.zero().clone());
            }
            return Err(Error::InvalidArgument(format!(
                "no invertible pivot in column {k}"
            )));
        };
        if p != k {
            a.swap(p, k);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].times(&a[k][k]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = num.try_div(&prev)?;
            }
            a[i][k] = m.zero().clone();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign_flip { d.negate() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            &Rational::zero(),
            rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(&mat(&[&[1, 2], &[3, 4]])).unwrap(), q(-2));
        assert_eq!(bareiss_det(&mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])).unwrap(), q(6));
        assert_eq!(bareiss_det(&Matrix::identity(&q(0), 0)).unwrap(), q(1));
    }

    #[test]
    fn pivoting_and_singular() {
        assert_eq!(bareiss_det(&mat(&[&[0, 1], &[1, 0]])).unwrap(), q(-1));
        assert_eq!(bareiss_det(&mat(&[&[1, 2], &[2, 4]])).unwrap(), q(0));
        assert_eq!(
            bareiss_det(&mat(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]])).unwrap(),
            q(-6)
        );
    }

    #[test]
    fn product_and_blocks() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), mat(&[&[2, 1], &[4, 3]]));
        let c = mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(c.block(1, 1, 2), mat(&[&[5, 6], &[8, 9]]));
        assert_eq!(c.leading(1), mat(&[&[1]]));
        assert_eq!(c.transpose().get(0, 2), &q(7));
    }
}
