//! Affine linear systems over an exact field.
//!
//! Several categorical checks reduce to "solve for a matrix subject to
//! composition constraints": colinear maps with a prescribed composite,
//! joint solving for a morphism pair, uniqueness via the homogeneous
//! solution space. [`LinearSystem`] accumulates scalar equations over a
//! flat unknown vector; [`MapSolver`] adds the matrix-equation sugar.

use super::matrix::Matrix;
use crate::scalar::Scalar;

/// A system `A x = b` accumulated row by row.
pub struct LinearSystem<S> {
    unknowns: usize,
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
}

/// Exact solution of a consistent system: one particular solution (free
/// variables at zero) and a basis of the homogeneous solution space.
pub struct AffineSolution<S> {
    pub particular: Vec<S>,
    pub nullspace: Vec<Vec<S>>,
}

impl<S> AffineSolution<S> {
    pub fn is_unique(&self) -> bool {
        self.nullspace.is_empty()
    }
}

impl<S: Scalar> LinearSystem<S> {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Adds the equation `coeffs · x = rhs`.
    pub fn push(&mut self, coeffs: Vec<S>, rhs: S) {
        debug_assert_eq!(coeffs.len(), self.unknowns);
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    /// Solves exactly; `None` means inconsistent.
    pub fn solve(&self) -> Option<AffineSolution<S>> {
        let a = Matrix::from_rows(self.rows.clone())
            .unwrap_or_else(|| Matrix::zero(0, self.unknowns));
        let a = if self.rows.is_empty() {
            Matrix::zero(0, self.unknowns)
        } else {
            a
        };
        let b = Matrix::from_fn(self.rhs.len(), 1, |r, _| self.rhs[r].clone());
        let particular = a.solve(&b)?;
        let null = a.kernel_basis();
        Some(AffineSolution {
            particular: particular.column(0),
            nullspace: (0..null.cols()).map(|j| null.column(j)).collect(),
        })
    }
}

/// Solves for an unknown `rows x cols` matrix `X` subject to exact
/// matrix-equation constraints. Unknowns are vectorized row-major.
pub struct MapSolver<S> {
    rows: usize,
    cols: usize,
    sys: LinearSystem<S>,
}

impl<S: Scalar> MapSolver<S> {
    pub fn new(rows: usize, cols: usize) -> Self {
        MapSolver {
            rows,
            cols,
            sys: LinearSystem::new(rows * cols),
        }
    }

    fn var(&self, i: usize, j: usize) -> usize {
        i * self.cols + j
    }

    /// Constraint `L · X = R` with `L: m x rows`, `R: m x cols`.
    pub fn require_left(&mut self, l: &Matrix<S>, r: &Matrix<S>) {
        assert_eq!(l.cols(), self.rows);
        assert_eq!((r.rows(), r.cols()), (l.rows(), self.cols));
        for a in 0..l.rows() {
            for c in 0..self.cols {
                let mut coeffs = vec![S::zero(); self.sys.unknowns()];
                for i in 0..self.rows {
                    if !l[(a, i)].is_zero() {
                        coeffs[self.var(i, c)] = l[(a, i)].clone();
                    }
                }
                self.sys.push(coeffs, r[(a, c)].clone());
            }
        }
    }

    /// Constraint `X · M = R` with `M: cols x n`, `R: rows x n`.
    pub fn require_right(&mut self, m: &Matrix<S>, r: &Matrix<S>) {
        assert_eq!(m.rows(), self.cols);
        assert_eq!((r.rows(), r.cols()), (self.rows, m.cols()));
        for i in 0..self.rows {
            for n in 0..m.cols() {
                let mut coeffs = vec![S::zero(); self.sys.unknowns()];
                for j in 0..self.cols {
                    if !m[(j, n)].is_zero() {
                        coeffs[self.var(i, j)] = m[(j, n)].clone();
                    }
                }
                self.sys.push(coeffs, r[(i, n)].clone());
            }
        }
    }

    /// Colinearity of the unknown `X: source -> target` with respect to
    /// coactions `target_coaction: (rows·h) x rows` and
    /// `source_coaction: (cols·h) x cols`, i.e.
    /// `target_coaction · X = (X ⊗ id_h) · source_coaction`.
    pub fn require_colinear(
        &mut self,
        target_coaction: &Matrix<S>,
        source_coaction: &Matrix<S>,
        hdim: usize,
    ) {
        assert_eq!(target_coaction.rows(), self.rows * hdim);
        assert_eq!(target_coaction.cols(), self.rows);
        assert_eq!(source_coaction.rows(), self.cols * hdim);
        assert_eq!(source_coaction.cols(), self.cols);
        for a in 0..self.rows {
            for k in 0..hdim {
                for c in 0..self.cols {
                    let mut coeffs = vec![S::zero(); self.sys.unknowns()];
                    // LHS: sum_i target[(a,k), i] X[i, c]
                    for i in 0..self.rows {
                        let t = &target_coaction[(a * hdim + k, i)];
                        if !t.is_zero() {
                            coeffs[self.var(i, c)] += t.clone();
                        }
                    }
                    // RHS: sum_j X[a, j] source[(j,k), c]
                    for j in 0..self.cols {
                        let s = &source_coaction[(j * hdim + k, c)];
                        if !s.is_zero() {
                            coeffs[self.var(a, j)] -= s.clone();
                        }
                    }
                    self.sys.push(coeffs, S::zero());
                }
            }
        }
    }

    /// Solves and reshapes; `None` means the constraints are inconsistent.
    pub fn solve(&self) -> Option<MapSolution<S>> {
        let sol = self.sys.solve()?;
        let reshape = |v: &[S]| Matrix::from_fn(self.rows, self.cols, |i, j| v[self.var(i, j)].clone());
        Some(MapSolution {
            particular: reshape(&sol.particular),
            nullspace: sol.nullspace.iter().map(|v| reshape(v)).collect(),
        })
    }
}

/// Solution of a [`MapSolver`] system, reshaped to matrices.
pub struct MapSolution<S> {
    pub particular: Matrix<S>,
    pub nullspace: Vec<Matrix<S>>,
}

impl<S> MapSolution<S> {
    pub fn is_unique(&self) -> bool {
        self.nullspace.is_empty()
    }
}
