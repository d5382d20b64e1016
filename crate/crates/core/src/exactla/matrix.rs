//! Dense matrices over an exact field, with Gauss–Jordan elimination.
//!
//! Pivots are chosen as the first nonzero entry in column order, never by
//! magnitude, so every reduction is deterministic and reproducible.

use std::fmt;
use std::mem;

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(entry(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Option<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return None;
        }
        Some(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer literal matrix, mostly for tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| S::from_int(n)).collect())
                .collect(),
        )
        .expect("ragged integer rows");
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_slice(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a.clone() * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + &rhs[(r, c)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - &rhs[(r, c)])
    }

    pub fn neg(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc += self[(r, c)].clone() * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        Matrix::from_fn(self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                rhs[(r - self.rows, c)].clone()
            }
        })
    }

    /// Kronecker product with index order `(i, k) -> i * rhs.rows + k`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        let mut out = Matrix::zero(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a.clone() * b;
                        }
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, row);
            let pivot = m[(row, col)].clone();
            if !pivot.is_one() {
                for c in col..m.cols {
                    if !m[(row, c)].is_zero() {
                        let v = mem::replace(&mut m[(row, c)], S::zero());
                        m[(row, c)] = v / &pivot;
                    }
                }
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = mem::replace(&mut m[(r, col)], S::zero());
                for c in (col + 1)..m.cols {
                    if !m[(row, c)].is_zero() {
                        let sub = factor.clone() * &m[(row, c)];
                        let v = mem::replace(&mut m[(r, c)], S::zero());
                        m[(r, c)] = v - sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one column per free variable of the RREF,
    /// in ascending free-column order. Returns a `cols x nullity` matrix.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out[(fc, j)] = S::one();
            for (t, &pc) in pivots.iter().enumerate() {
                if !r[(t, fc)].is_zero() {
                    out[(pc, j)] = -r[(t, fc)].clone();
                }
            }
        }
        out
    }

    /// Solves `self * X = rhs` exactly. Returns the solution with all free
    /// variables set to zero, or `None` if any column is inconsistent.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "solve: rhs row mismatch");
        let (r, pivots) = self.hstack(rhs).rref();
        // a pivot inside the augmented block witnesses inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.cols, rhs.cols);
        for (t, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = r[(t, self.cols + j)].clone();
            }
        }
        Some(x)
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.data[r * self.cols + c].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type M = Matrix<Rational>;

    #[test]
    fn rref_and_rank() {
        let m = M::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
        assert_eq!(r.row_slice(2), M::zero(1, 3).row_slice(0));
    }

    #[test]
    fn kernel_of_sum_functional() {
        let m = M::from_int_rows(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!((k.rows(), k.cols()), (2, 1));
        assert_eq!(k.column(0), vec![Rational::from_int(-1), Rational::from_int(1)]);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = M::from_int_rows(&[&[1, 0], &[0, 2], &[1, 2]]);
        let b = M::from_int_rows(&[&[1], &[4], &[5]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let bad = M::from_int_rows(&[&[1], &[4], &[100]]);
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn kronecker_identity() {
        let a = M::identity(2);
        let b = M::identity(3);
        assert_eq!(a.kronecker(&b), M::identity(6));
    }
}
