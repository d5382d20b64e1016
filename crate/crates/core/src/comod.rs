//! Finite-dimensional coalgebras and comodules over an exact field:
//! law checking, free comodules, colinear maps, and equalizers computed
//! in the comodule category.
//!
//! Since the tensor product over a field is exact, limits of comodules can
//! be computed on underlying vector spaces; [`comodule_equalizer`] computes
//! the equalizer in [`crate::exactla`] and then *asserts* that the coaction
//! restricts instead of re-deriving it. The assertion guards implementation
//! bugs — over a field it can never fail for genuinely colinear inputs.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::exactla::system::MapSolver;
use crate::exactla::{
    equalizer, factor_through_mono, is_iso, tensor_map, LaError, LinearMap, Matrix,
    VectorSpace,
};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComodError {
    #[error(transparent)]
    La(#[from] LaError),
    #[error("the maps are not a parallel pair of comodule morphisms")]
    NotParallel,
    #[error("map is not colinear from the declared source to the declared target")]
    NotColinear,
    #[error("the comodules live over different coalgebras")]
    CoalgebraMismatch,
}

/// Witness of a failed coalgebra/comodule law: the law's name and the
/// first domain basis vector on which the two sides of the law differ.
#[derive(Debug, Clone)]
pub struct LawViolation<S> {
    pub law: &'static str,
    pub basis_index: usize,
    pub basis_label: String,
    pub lhs: Vec<S>,
    pub rhs: Vec<S>,
}

fn first_column_difference<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Option<usize> {
    (0..a.cols()).find(|&c| a.column(c) != b.column(c))
}

fn violation<S: Scalar>(
    law: &'static str,
    domain: &VectorSpace,
    lhs: &Matrix<S>,
    rhs: &Matrix<S>,
) -> Result<(), LawViolation<S>> {
    match first_column_difference(lhs, rhs) {
        None => Ok(()),
        Some(c) => Err(LawViolation {
            law,
            basis_index: c,
            basis_label: domain.label(c).to_string(),
            lhs: lhs.column(c),
            rhs: rhs.column(c),
        }),
    }
}

/// A coalgebra `(H, Δ, ε)`: comultiplication `H -> H⊗H` and counit
/// `H -> 1`, subject to coassociativity and the counit laws.
#[derive(Clone)]
pub struct Coalgebra<S> {
    space: VectorSpace,
    comult: LinearMap<S>,
    counit: LinearMap<S>,
}

impl<S: Scalar> Coalgebra<S> {
    /// Shape-checks only; the laws are a separate verdict via [`Self::check`].
    pub fn new(
        space: VectorSpace,
        comult: LinearMap<S>,
        counit: LinearMap<S>,
    ) -> Result<Self, ComodError> {
        let h = space.dim();
        if comult.dom().dim() != h || comult.cod().dim() != h * h {
            return Err(LaError::ShapeMismatch {
                context: "coalgebra comultiplication",
                expected_rows: h * h,
                expected_cols: h,
                got_rows: comult.cod().dim(),
                got_cols: comult.dom().dim(),
            }
            .into());
        }
        if counit.dom().dim() != h || counit.cod().dim() != 1 {
            return Err(LaError::ShapeMismatch {
                context: "coalgebra counit",
                expected_rows: 1,
                expected_cols: h,
                got_rows: counit.cod().dim(),
                got_cols: counit.dom().dim(),
            }
            .into());
        }
        Ok(Coalgebra {
            space,
            comult,
            counit,
        })
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn comult(&self) -> &LinearMap<S> {
        &self.comult
    }

    pub fn counit(&self) -> &LinearMap<S> {
        &self.counit
    }

    /// `V ⊗ ε : V⊗H -> V` under the canonical identification `V⊗1 ≅ V`.
    pub fn counit_on(&self, v: &VectorSpace) -> LinearMap<S> {
        tensor_map(&LinearMap::identity(v), &self.counit).with_cod(v.clone())
    }

    /// `V ⊗ Δ : V⊗H -> V⊗H⊗H`.
    pub fn comult_on(&self, v: &VectorSpace) -> LinearMap<S> {
        tensor_map(&LinearMap::identity(v), &self.comult)
    }

    /// Verifies coassociativity and both counit laws exactly; on failure
    /// reports the law and a basis vector where it fails.
    pub fn check(&self) -> Result<(), LawViolation<S>> {
        let id_h = LinearMap::identity(&self.space);
        let left = tensor_map(&self.comult, &id_h).compose(&self.comult);
        let right = tensor_map(&id_h, &self.comult).compose(&self.comult);
        violation("coassociativity", &self.space, left.matrix(), right.matrix())?;
        let id = Matrix::identity(self.dim());
        let counit_left = tensor_map(&self.counit, &id_h).compose(&self.comult);
        violation("counit-left", &self.space, counit_left.matrix(), &id)?;
        let counit_right = tensor_map(&id_h, &self.counit).compose(&self.comult);
        violation("counit-right", &self.space, counit_right.matrix(), &id)?;
        Ok(())
    }

    /// Structural equality: same dimension, same structure matrices.
    pub fn same_as(&self, other: &Coalgebra<S>) -> bool {
        self.space.dim() == other.space.dim()
            && self.comult.matrix() == other.comult.matrix()
            && self.counit.matrix() == other.counit.matrix()
    }
}

impl<S: Scalar> fmt::Debug for Coalgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coalgebra(dim {})", self.dim())
    }
}

/// A right comodule `(X, δ)` over a shared coalgebra: a coaction
/// `δ : X -> X⊗H`, coassociative and counital.
#[derive(Clone)]
pub struct Comodule<S> {
    space: VectorSpace,
    coalgebra: Arc<Coalgebra<S>>,
    coaction: LinearMap<S>,
}

impl<S: Scalar> Comodule<S> {
    pub fn new(
        coalgebra: Arc<Coalgebra<S>>,
        space: VectorSpace,
        coaction: LinearMap<S>,
    ) -> Result<Self, ComodError> {
        let (x, h) = (space.dim(), coalgebra.dim());
        if coaction.dom().dim() != x || coaction.cod().dim() != x * h {
            return Err(LaError::ShapeMismatch {
                context: "comodule coaction",
                expected_rows: x * h,
                expected_cols: x,
                got_rows: coaction.cod().dim(),
                got_cols: coaction.dom().dim(),
            }
            .into());
        }
        Ok(Comodule {
            space,
            coalgebra,
            coaction,
        })
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra<S>> {
        &self.coalgebra
    }

    pub fn coaction(&self) -> &LinearMap<S> {
        &self.coaction
    }

    /// Same laws as for a coalgebra, with the coaction in place of the
    /// comultiplication.
    pub fn check(&self) -> Result<(), LawViolation<S>> {
        let id_h = LinearMap::identity(self.coalgebra.space());
        let left = tensor_map(&self.coaction, &id_h).compose(&self.coaction);
        let right = self
            .coalgebra
            .comult_on(&self.space)
            .compose(&self.coaction);
        violation(
            "coaction-coassociativity",
            &self.space,
            left.matrix(),
            right.matrix(),
        )?;
        let counit = self
            .coalgebra
            .counit_on(&self.space)
            .compose(&self.coaction);
        violation(
            "coaction-counitality",
            &self.space,
            counit.matrix(),
            &Matrix::identity(self.dim()),
        )?;
        Ok(())
    }

    /// Comodule equality is literal: same space dimension, identical
    /// coaction matrix, same coalgebra.
    pub fn same_as(&self, other: &Comodule<S>) -> bool {
        self.dim() == other.dim()
            && self.coaction.matrix() == other.coaction.matrix()
            && self.coalgebra.same_as(&other.coalgebra)
    }

    /// Direct sum, with the coaction interleaved into the fixed tensor
    /// basis order of the sum.
    pub fn direct_sum(a: &Comodule<S>, b: &Comodule<S>) -> Result<Comodule<S>, ComodError> {
        if !a.coalgebra.same_as(&b.coalgebra) {
            return Err(ComodError::CoalgebraMismatch);
        }
        let h = a.coalgebra.dim();
        let (da, db) = (a.dim(), b.dim());
        let labels = a
            .space
            .labels()
            .iter()
            .map(|l| format!("l.{l}"))
            .chain(b.space.labels().iter().map(|l| format!("r.{l}")))
            .collect();
        let space = VectorSpace::new(labels)?;
        let mut m = Matrix::zero((da + db) * h, da + db);
        for j in 0..da {
            for i in 0..da {
                for k in 0..h {
                    let v = a.coaction.matrix()[(i * h + k, j)].clone();
                    if !v.is_zero() {
                        m[(i * h + k, j)] = v;
                    }
                }
            }
        }
        for j in 0..db {
            for i in 0..db {
                for k in 0..h {
                    let v = b.coaction.matrix()[(i * h + k, j)].clone();
                    if !v.is_zero() {
                        m[((da + i) * h + k, da + j)] = v;
                    }
                }
            }
        }
        let coaction = LinearMap::new(
            space.clone(),
            space.tensor(a.coalgebra.space()),
            m,
        )?;
        Comodule::new(a.coalgebra.clone(), space, coaction)
    }
}

impl<S: Scalar> fmt::Debug for Comodule<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Comodule(dim {} over dim-{} coalgebra)", self.dim(), self.coalgebra.dim())
    }
}

/// The free comodule `(V⊗H, V⊗Δ)` on a space `V`.
pub fn free_comodule<S: Scalar>(v: &VectorSpace, coalgebra: &Arc<Coalgebra<S>>) -> Comodule<S> {
    let space = v.tensor(coalgebra.space());
    let coaction = coalgebra
        .comult_on(v)
        .with_dom(space.clone())
        .with_cod(space.tensor(coalgebra.space()));
    Comodule::new(coalgebra.clone(), space, coaction).expect("free comodule shapes")
}

/// `δ_Y ∘ f = (f⊗H) ∘ δ_X`, exactly.
pub fn is_colinear<S: Scalar>(f: &LinearMap<S>, source: &Comodule<S>, target: &Comodule<S>) -> bool {
    if f.dom().dim() != source.dim()
        || f.cod().dim() != target.dim()
        || !source.coalgebra.same_as(&target.coalgebra)
    {
        return false;
    }
    let id_h = LinearMap::identity(source.coalgebra.space());
    target.coaction.compose(f).matrix() == tensor_map(f, &id_h).compose(&source.coaction).matrix()
}

/// A colinear map with its declared source and target; colinearity is
/// verified at construction.
#[derive(Clone)]
pub struct ComoduleMorphism<S> {
    source: Comodule<S>,
    target: Comodule<S>,
    map: LinearMap<S>,
}

impl<S: Scalar> fmt::Debug for ComoduleMorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ComoduleMorphism(dim {} -> dim {})",
            self.source.dim(),
            self.target.dim()
        )
    }
}

impl<S: Scalar> ComoduleMorphism<S> {
    pub fn new(
        source: Comodule<S>,
        target: Comodule<S>,
        map: LinearMap<S>,
    ) -> Result<Self, ComodError> {
        if !is_colinear(&map, &source, &target) {
            return Err(ComodError::NotColinear);
        }
        Ok(ComoduleMorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Comodule<S> {
        &self.source
    }

    pub fn target(&self) -> &Comodule<S> {
        &self.target
    }

    pub fn map(&self) -> &LinearMap<S> {
        &self.map
    }
}

/// Equalizer of a parallel pair of comodule morphisms, computed on
/// underlying spaces and returned with the restricted coaction.
///
/// Panics if the coaction fails to restrict to the equalizer subspace:
/// over a field that indicates an engine bug, not a user error.
pub fn comodule_equalizer<S: Scalar>(
    f: &ComoduleMorphism<S>,
    g: &ComoduleMorphism<S>,
) -> Result<(Comodule<S>, ComoduleMorphism<S>), ComodError> {
    if !f.source.same_as(&g.source) || !f.target.same_as(&g.target) {
        return Err(ComodError::NotParallel);
    }
    let x = &f.source;
    let incl = equalizer(&f.map, &g.map)?;
    let id_h = LinearMap::identity(x.coalgebra.space());
    let incl_h = tensor_map(&incl, &id_h);
    let restricted = factor_through_mono(&x.coaction.compose(&incl), &incl_h)?
        .expect("coaction does not restrict to the equalizer: internal consistency error");
    let e_space = incl.dom().clone();
    let coaction = restricted
        .with_dom(e_space.clone())
        .with_cod(e_space.tensor(x.coalgebra.space()));
    let e = Comodule::new(x.coalgebra.clone(), e_space, coaction)?;
    debug_assert!(e.check().is_ok());
    let morphism = ComoduleMorphism::new(e.clone(), x.clone(), incl)?;
    Ok((e, morphism))
}

/// The smallest subcomodule of `x` containing the given vectors, as
/// `(subcomodule, inclusion)`. Computed by closing the span under
/// coefficient spaces of the coaction.
pub fn generated_subcomodule<S: Scalar>(
    x: &Comodule<S>,
    generators: &[Vec<S>],
) -> (Comodule<S>, ComoduleMorphism<S>) {
    let h = x.coalgebra.dim();
    let dim = x.dim();
    let mut collected: Vec<Vec<S>> = generators.to_vec();
    let mut span_rank = 0;
    loop {
        let cols = Matrix::from_fn(dim, collected.len(), |r, c| collected[c][r].clone());
        let rank = cols.rank();
        if rank == span_rank {
            break;
        }
        span_rank = rank;
        let mut new_vectors = Vec::new();
        for v in &collected {
            let image = x.coaction.apply(v);
            for k in 0..h {
                let component: Vec<S> = (0..dim).map(|i| image[i * h + k].clone()).collect();
                if component.iter().any(|c| !c.is_zero()) {
                    new_vectors.push(component);
                }
            }
        }
        collected.extend(new_vectors);
    }
    // deterministic basis: pivot columns of the collected-vector matrix
    let cols = Matrix::from_fn(dim, collected.len(), |r, c| collected[c][r].clone());
    let (_, pivots) = cols.rref();
    let basis: Vec<&Vec<S>> = pivots.iter().map(|&c| &collected[c]).collect();
    let sub_space = VectorSpace::generated(basis.len(), "s");
    let incl = LinearMap::new(
        sub_space.clone(),
        x.space.clone(),
        Matrix::from_fn(dim, basis.len(), |r, c| basis[c][r].clone()),
    )
    .expect("inclusion shapes");
    let id_h = LinearMap::identity(x.coalgebra.space());
    let restricted = factor_through_mono(&x.coaction.compose(&incl), &tensor_map(&incl, &id_h))
        .expect("shapes")
        .expect("closure is coaction-stable");
    let coaction = restricted
        .with_dom(sub_space.clone())
        .with_cod(sub_space.tensor(x.coalgebra.space()));
    let sub = Comodule::new(x.coalgebra.clone(), sub_space, coaction).expect("shapes");
    debug_assert!(sub.check().is_ok());
    let morphism = ComoduleMorphism::new(sub.clone(), x.clone(), incl).expect("inclusion colinear");
    (sub, morphism)
}

/// The space of all colinear maps `source -> target`, as a matrix basis.
pub fn colinear_map_space<S: Scalar>(source: &Comodule<S>, target: &Comodule<S>) -> Vec<Matrix<S>> {
    let mut solver = MapSolver::new(target.dim(), source.dim());
    solver.require_colinear(
        target.coaction.matrix(),
        source.coaction.matrix(),
        source.coalgebra.dim(),
    );
    let sol = solver.solve().expect("homogeneous system is consistent");
    debug_assert!(sol.particular.is_zero());
    sol.nullspace
}

/// Searches for a comodule isomorphism by solving the colinearity system
/// and probing the solution space for an invertible element. Sound but
/// not complete: `None` after the probe budget does not certify that no
/// isomorphism exists (the canonical constructions elsewhere never rely
/// on this search).
pub fn find_comodule_isomorphism<S: Scalar>(
    source: &Comodule<S>,
    target: &Comodule<S>,
    rng: &mut impl Rng,
) -> Option<ComoduleMorphism<S>> {
    if source.dim() != target.dim() || !source.coalgebra.same_as(&target.coalgebra) {
        return None;
    }
    let basis = colinear_map_space(source, target);
    if basis.is_empty() && source.dim() > 0 {
        return None;
    }
    let try_map = |m: Matrix<S>| -> Option<ComoduleMorphism<S>> {
        let map = LinearMap::new(source.space.clone(), target.space.clone(), m).ok()?;
        if is_iso(&map) {
            Some(ComoduleMorphism::new(source.clone(), target.clone(), map).expect("colinear by construction"))
        } else {
            None
        }
    };
    if source.dim() == 0 {
        return try_map(Matrix::zero(0, 0));
    }
    for b in &basis {
        if let Some(found) = try_map(b.clone()) {
            return Some(found);
        }
    }
    for _ in 0..64 {
        let mut candidate = Matrix::zero(target.dim(), source.dim());
        for b in &basis {
            let c = S::from_int(rng.random_range(-3..=3));
            if !c.is_zero() {
                for i in 0..candidate.rows() {
                    for j in 0..candidate.cols() {
                        if !b[(i, j)].is_zero() {
                            candidate[(i, j)] += c.clone() * &b[(i, j)];
                        }
                    }
                }
            }
        }
        if let Some(found) = try_map(candidate) {
            return Some(found);
        }
    }
    None
}
