//! Exact rational linear algebra: spaces, maps, kernels, pushouts,
//! equalizers, and factorization through epimorphisms.
//!
//! This is the computational substrate of the linear backend. Everything is
//! exact: scalars form an exact field ([`crate::scalar::Scalar`]), equality
//! is literal equality, and there are no tolerances anywhere.
//!
//! Conventions fixed once and used by every higher module:
//!
//! * Vectors are columns; a map `f: V -> W` is a `dim W x dim V` matrix and
//!   composition is matrix product.
//! * Tensor products use the lexicographic basis order on (left index,
//!   right index); see [`tensor_space`] and [`tensor_map`]. Higher modules
//!   must build tensors through these helpers, never via raw Kronecker
//!   products, so the convention cannot drift.
//! * Epimorphisms and monomorphisms are implemented as surjective and
//!   injective linear maps. This is the correct categorical notion in the
//!   vector-space backend, and also for monomorphisms of comodules, because
//!   the forgetful functor to vector spaces is exact and faithful.
//! * Composition checks dimensions only; basis labels are reporting
//!   metadata and never influence a computation.
//! * Pushout apex bases are chosen from the reduced-row-echelon pivots of
//!   the identification subspace, so results are deterministic across runs.

mod matrix;
pub mod system;

use std::fmt;

use thiserror::Error;

pub use matrix::Matrix;

use crate::scalar::Scalar;

/// Errors from the linear backend's public operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaError {
    #[error("{context}: expected a {expected_rows}x{expected_cols} matrix, got {got_rows}x{got_cols}")]
    ShapeMismatch {
        context: &'static str,
        expected_rows: usize,
        expected_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("{context}: domains differ ({left} vs {right})")]
    DomainMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },
    #[error("{context}: map is not an epimorphism (rank {rank}, codomain dimension {cod})")]
    NotEpi {
        context: &'static str,
        rank: usize,
        cod: usize,
    },
    #[error("{context}: map is not a monomorphism (rank {rank}, domain dimension {dom})")]
    NotMono {
        context: &'static str,
        rank: usize,
        dom: usize,
    },
    #[error("basis labels must be pairwise distinct (`{0}` repeats)")]
    DuplicateLabel(String),
    #[error("{0} labels for a {1}-dimensional space")]
    LabelCount(usize, usize),
}

/// A finite-dimensional vector space: a dimension plus basis labels.
/// Labels exist for reporting only and never affect computation.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorSpace {
    dim: usize,
    labels: Vec<String>,
}

impl VectorSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, LaError> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LaError::DuplicateLabel(l.clone()));
            }
        }
        Ok(VectorSpace {
            dim: labels.len(),
            labels,
        })
    }

    pub fn with_labels(dim: usize, labels: Vec<String>) -> Result<Self, LaError> {
        if labels.len() != dim {
            return Err(LaError::LabelCount(labels.len(), dim));
        }
        Self::new(labels)
    }

    /// `dim`-dimensional space with generated labels `prefix0, prefix1, ...`.
    pub fn generated(dim: usize, prefix: &str) -> Self {
        VectorSpace {
            dim,
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    /// The one-dimensional ground line.
    pub fn line() -> Self {
        VectorSpace {
            dim: 1,
            labels: vec!["1".into()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Tensor product space, basis ordered lexicographically on
    /// (left index, right index).
    pub fn tensor(&self, rhs: &VectorSpace) -> VectorSpace {
        let mut labels = Vec::with_capacity(self.dim * rhs.dim);
        for l in &self.labels {
            for r in &rhs.labels {
                labels.push(format!("{l}⊗{r}"));
            }
        }
        VectorSpace {
            dim: self.dim * rhs.dim,
            labels,
        }
    }
}

impl fmt::Debug for VectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorSpace(dim {}, [{}])", self.dim, self.labels.join(", "))
    }
}

/// A linear map with declared domain and codomain spaces.
///
/// The matrix has shape `cod.dim x dom.dim`; this is enforced at
/// construction and preserved by every operation.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap<S> {
    dom: VectorSpace,
    cod: VectorSpace,
    matrix: Matrix<S>,
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(dom: VectorSpace, cod: VectorSpace, matrix: Matrix<S>) -> Result<Self, LaError> {
        if matrix.rows() != cod.dim() || matrix.cols() != dom.dim() {
            return Err(LaError::ShapeMismatch {
                context: "linear map construction",
                expected_rows: cod.dim(),
                expected_cols: dom.dim(),
                got_rows: matrix.rows(),
                got_cols: matrix.cols(),
            });
        }
        Ok(LinearMap { dom, cod, matrix })
    }

    pub fn identity(space: &VectorSpace) -> Self {
        LinearMap {
            dom: space.clone(),
            cod: space.clone(),
            matrix: Matrix::identity(space.dim()),
        }
    }

    pub fn zero(dom: VectorSpace, cod: VectorSpace) -> Self {
        let matrix = Matrix::zero(cod.dim(), dom.dim());
        LinearMap { dom, cod, matrix }
    }

    pub fn dom(&self) -> &VectorSpace {
        &self.dom
    }

    pub fn cod(&self) -> &VectorSpace {
        &self.cod
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// Composition `self ∘ other`. Dimension mismatch is a programming
    /// error in this crate, hence an assertion rather than a `Result`.
    pub fn compose(&self, other: &LinearMap<S>) -> LinearMap<S> {
        assert_eq!(
            self.dom.dim(),
            other.cod.dim(),
            "composition shape mismatch"
        );
        LinearMap {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &LinearMap<S>) -> LinearMap<S> {
        LinearMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &LinearMap<S>) -> LinearMap<S> {
        LinearMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix.apply(v)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Re-declares the codomain; the dimension must agree. Used to apply
    /// the canonical identifications `V ⊗ 1 ≅ V ≅ 1 ⊗ V`, which are
    /// identity matrices under the fixed basis conventions.
    pub fn with_cod(mut self, cod: VectorSpace) -> Self {
        assert_eq!(self.cod.dim(), cod.dim(), "codomain relabel dimension mismatch");
        self.cod = cod;
        self
    }

    /// Re-declares the domain; the dimension must agree.
    pub fn with_dom(mut self, dom: VectorSpace) -> Self {
        assert_eq!(self.dom.dim(), dom.dim(), "domain relabel dimension mismatch");
        self.dom = dom;
        self
    }

    /// Exact inverse, when the map is an isomorphism.
    pub fn inverse(&self) -> Option<LinearMap<S>> {
        if self.dom.dim() != self.cod.dim() {
            return None;
        }
        let inv = self.matrix.solve(&Matrix::identity(self.cod.dim()))?;
        if self.matrix.mul(&inv) != Matrix::identity(self.cod.dim()) {
            return None;
        }
        Some(LinearMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            matrix: inv,
        })
    }
}

impl<S: fmt::Display> fmt::Debug for LinearMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearMap({} -> {}) {:?}",
            self.dom.dim, self.cod.dim, self.matrix
        )
    }
}

/// `rank f == cod.dim`, i.e. the map is surjective.
pub fn is_epi<S: Scalar>(f: &LinearMap<S>) -> bool {
    f.rank() == f.cod().dim()
}

/// `rank f == dom.dim`, i.e. the map is injective.
pub fn is_mono<S: Scalar>(f: &LinearMap<S>) -> bool {
    f.rank() == f.dom().dim()
}

pub fn is_iso<S: Scalar>(f: &LinearMap<S>) -> bool {
    f.dom().dim() == f.cod().dim() && f.rank() == f.dom().dim()
}

/// Inclusion of the kernel: an injective map `K -> dom f` whose image is
/// exactly `ker f`, with `dim K = dom.dim - rank f`.
pub fn kernel<S: Scalar>(f: &LinearMap<S>) -> LinearMap<S> {
    let basis = f.matrix().kernel_basis();
    let k = VectorSpace::generated(basis.cols(), "k");
    LinearMap {
        dom: k,
        cod: f.dom().clone(),
        matrix: basis,
    }
}

/// Equalizer of a parallel pair, computed as `kernel(f - g)`, returned as
/// an inclusion `E -> dom`.
pub fn equalizer<S: Scalar>(f: &LinearMap<S>, g: &LinearMap<S>) -> Result<LinearMap<S>, LaError> {
    if f.dom().dim() != g.dom().dim() || f.cod().dim() != g.cod().dim() {
        return Err(LaError::ShapeMismatch {
            context: "equalizer",
            expected_rows: f.cod().dim(),
            expected_cols: f.dom().dim(),
            got_rows: g.cod().dim(),
            got_cols: g.dom().dim(),
        });
    }
    let mut incl = kernel(&f.sub(g));
    incl.dom = VectorSpace::generated(incl.dom.dim(), "eq");
    Ok(incl)
}

/// Result of a pushout of a span `(f: A -> B, g: A -> C)`: the apex
/// `(B ⊕ C) / W` with `W = {(f(a), -g(a))}`, and the two legs from `B`
/// and `C`. The legs are jointly surjective and `left ∘ f = right ∘ g`.
#[derive(Clone)]
pub struct PushoutResult<S> {
    pub apex: VectorSpace,
    pub left: LinearMap<S>,
    pub right: LinearMap<S>,
}

impl<S: Scalar> fmt::Debug for PushoutResult<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PushoutResult(apex dim {}, legs {} <- {} | {} <- {})",
            self.apex.dim(),
            self.left.cod().dim(),
            self.left.dom().dim(),
            self.right.cod().dim(),
            self.right.dom().dim()
        )
    }
}

impl<S: Scalar> PushoutResult<S> {
    /// The quotient map `B ⊕ C -> apex`, i.e. the block `[left | right]`.
    pub fn quotient(&self) -> LinearMap<S> {
        let b = self.left.dom().clone();
        let c = self.right.dom().clone();
        let dom = VectorSpace::generated(b.dim() + c.dim(), "s");
        LinearMap {
            dom,
            cod: self.apex.clone(),
            matrix: self.left.matrix().hstack(self.right.matrix()),
        }
    }

    /// Mediating map out of the apex for a cocone `(u: B -> Z, v: C -> Z)`.
    /// Returns `None` when `(u, v)` does not kill the identification
    /// subspace, i.e. when it is not a cocone over the original span.
    pub fn factor(&self, u: &LinearMap<S>, v: &LinearMap<S>) -> Result<Option<LinearMap<S>>, LaError> {
        let cocone = LinearMap {
            dom: self.quotient().dom().clone(),
            cod: u.cod().clone(),
            matrix: u.matrix().hstack(v.matrix()),
        };
        factor_through_epi(&cocone, &self.quotient())
    }
}

/// Pushout of the span `(f: A -> B, g: A -> C)`.
///
/// The apex basis is the set of non-pivot coordinates of the reduced row
/// echelon form of `W = {(f(a), -g(a))}`, so the output is deterministic.
/// Apex labels are the bracketed labels of the surviving coordinates.
pub fn pushout<S: Scalar>(f: &LinearMap<S>, g: &LinearMap<S>) -> Result<PushoutResult<S>, LaError> {
    if f.dom().dim() != g.dom().dim() {
        return Err(LaError::DomainMismatch {
            context: "pushout",
            left: f.dom().dim(),
            right: g.dom().dim(),
        });
    }
    let b_dim = f.cod().dim();
    let c_dim = g.cod().dim();
    let n = b_dim + c_dim;
    // rows of W: (f(a_i), -g(a_i)) for the domain basis
    let w = f.matrix().vstack(&g.matrix().neg()).transpose();
    let (r, pivots) = w.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let label_of = |c: usize, qualified: bool| {
        if c < b_dim {
            let l = f.cod().label(c);
            if qualified {
                format!("[l.{l}]")
            } else {
                format!("[{l}]")
            }
        } else {
            let l = g.cod().label(c - b_dim);
            if qualified {
                format!("[r.{l}]")
            } else {
                format!("[{l}]")
            }
        }
    };
    let plain: Vec<String> = free.iter().map(|&c| label_of(c, false)).collect();
    // codomains may share label names; qualify by side when they collide
    let apex = VectorSpace::new(plain).unwrap_or_else(|_| {
        VectorSpace::new(free.iter().map(|&c| label_of(c, true)).collect())
            .expect("side-qualified labels are distinct")
    });
    // quotient matrix: e_free -> basis vector, e_pivot -> minus the free part
    // of its RREF row
    let mut q = Matrix::zero(free.len(), n);
    for (j, &fc) in free.iter().enumerate() {
        q[(j, fc)] = S::one();
    }
    for (t, &pc) in pivots.iter().enumerate() {
        for (j, &fc) in free.iter().enumerate() {
            if !r[(t, fc)].is_zero() {
                q[(j, pc)] = -r[(t, fc)].clone();
            }
        }
    }
    let left = LinearMap {
        dom: f.cod().clone(),
        cod: apex.clone(),
        matrix: Matrix::from_fn(free.len(), b_dim, |r_, c_| q[(r_, c_)].clone()),
    };
    let right = LinearMap {
        dom: g.cod().clone(),
        cod: apex.clone(),
        matrix: Matrix::from_fn(free.len(), c_dim, |r_, c_| q[(r_, b_dim + c_)].clone()),
    };
    Ok(PushoutResult { apex, left, right })
}

/// Unique factorization `u` with `u ∘ e = h` through an epimorphism `e`,
/// when it exists (exactly when `ker e ⊆ ker h`). Uniqueness is automatic
/// because `e` is surjective.
pub fn factor_through_epi<S: Scalar>(
    h: &LinearMap<S>,
    e: &LinearMap<S>,
) -> Result<Option<LinearMap<S>>, LaError> {
    if h.dom().dim() != e.dom().dim() {
        return Err(LaError::DomainMismatch {
            context: "factor through epi",
            left: h.dom().dim(),
            right: e.dom().dim(),
        });
    }
    let rank = e.rank();
    if rank != e.cod().dim() {
        return Err(LaError::NotEpi {
            context: "factor through epi",
            rank,
            cod: e.cod().dim(),
        });
    }
    // u * E = H  <=>  E^T * u^T = H^T
    let Some(ut) = e.matrix().transpose().solve(&h.matrix().transpose()) else {
        return Ok(None);
    };
    let u = LinearMap {
        dom: e.cod().clone(),
        cod: h.cod().clone(),
        matrix: ut.transpose(),
    };
    // solve() guarantees consistency per column, so this always holds
    debug_assert_eq!(u.compose(e).matrix(), h.matrix());
    Ok(Some(u))
}

/// Corestriction `u` with `m ∘ u = h` through a monomorphism `m`, when the
/// image of `h` lands inside the image of `m`.
pub fn factor_through_mono<S: Scalar>(
    h: &LinearMap<S>,
    m: &LinearMap<S>,
) -> Result<Option<LinearMap<S>>, LaError> {
    if h.cod().dim() != m.cod().dim() {
        return Err(LaError::ShapeMismatch {
            context: "factor through mono",
            expected_rows: m.cod().dim(),
            expected_cols: h.dom().dim(),
            got_rows: h.cod().dim(),
            got_cols: h.dom().dim(),
        });
    }
    let rank = m.rank();
    if rank != m.dom().dim() {
        return Err(LaError::NotMono {
            context: "factor through mono",
            rank,
            dom: m.dom().dim(),
        });
    }
    let Some(x) = m.matrix().solve(h.matrix()) else {
        return Ok(None);
    };
    Ok(Some(LinearMap {
        dom: h.dom().clone(),
        cod: m.dom().clone(),
        matrix: x,
    }))
}

/// Tensor product of spaces, in the fixed lexicographic basis order.
pub fn tensor_space(v: &VectorSpace, w: &VectorSpace) -> VectorSpace {
    v.tensor(w)
}

/// Tensor product of maps: the Kronecker product under the fixed basis
/// convention, so that `tensor_map(id, id) = id` and
/// `(f ⊗ g) ∘ (f' ⊗ g') = (f ∘ f') ⊗ (g ∘ g')`.
pub fn tensor_map<S: Scalar>(f: &LinearMap<S>, g: &LinearMap<S>) -> LinearMap<S> {
    LinearMap {
        dom: f.dom().tensor(g.dom()),
        cod: f.cod().tensor(g.cod()),
        matrix: f.matrix().kronecker(g.matrix()),
    }
}

#[cfg(test)]
mod tests;
