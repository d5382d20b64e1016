//! Geometric partial comodule data over a coalgebra: the defining cospan,
//! verification of the two axioms (counitality and geometric
//! coassociativity) through the canonical pushouts the cospan induces,
//! morphisms of partial comodules, the trivial partial structure, and the
//! induction of a partial structure from a cover.
//!
//! A partial comodule datum is a cospan
//!
//! ```text
//!     X --coaction--> X•H <<--projection-- X⊗H
//! ```
//!
//! with the projection an epimorphism. Counitality asks the counit of the
//! free side to descend to `X•H`; geometric coassociativity asks the two
//! iterated pushout apexes to be comparable by an isomorphism that squares
//! with the coaction. Comparison maps between cospans sharing an epi leg
//! are unique whenever they exist, which is why one-sided factorization
//! plus an isomorphism check suffices for the coassociativity axiom.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::comod::{is_colinear, Coalgebra, Comodule, ComodError};
use crate::exactla::system::LinearSystem;
use crate::exactla::{
    factor_through_epi, is_epi, is_iso, kernel, pushout, tensor_map, LaError, LinearMap, Matrix,
    PushoutResult, VectorSpace,
};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GpcError {
    #[error(transparent)]
    La(#[from] LaError),
    #[error(transparent)]
    Comod(#[from] ComodError),
    #[error("the projection X⊗H -> X•H must be an epimorphism")]
    ProjectionNotEpi,
    #[error("the trivial partial structure needs a nonzero coalgebra")]
    ZeroCoalgebra,
    #[error("cover projection must be an epimorphism")]
    CoverNotEpi,
    #[error("inputs are not a cover morphism: {0}")]
    NotACoverMorphism(&'static str),
}

/// A partial comodule datum: the cospan `(X, X•H, ρ, π)` with `π` epi.
#[derive(Clone)]
pub struct PartialDatum<S> {
    coalgebra: Arc<Coalgebra<S>>,
    base: VectorSpace,
    apex: VectorSpace,
    coaction: LinearMap<S>,
    projection: LinearMap<S>,
}

impl<S: Scalar> PartialDatum<S> {
    pub fn new(
        coalgebra: Arc<Coalgebra<S>>,
        base: VectorSpace,
        apex: VectorSpace,
        coaction: LinearMap<S>,
        projection: LinearMap<S>,
    ) -> Result<Self, GpcError> {
        let (x, h, a) = (base.dim(), coalgebra.dim(), apex.dim());
        if coaction.dom().dim() != x || coaction.cod().dim() != a {
            return Err(LaError::ShapeMismatch {
                context: "partial coaction",
                expected_rows: a,
                expected_cols: x,
                got_rows: coaction.cod().dim(),
                got_cols: coaction.dom().dim(),
            }
            .into());
        }
        if projection.dom().dim() != x * h || projection.cod().dim() != a {
            return Err(LaError::ShapeMismatch {
                context: "partial projection",
                expected_rows: a,
                expected_cols: x * h,
                got_rows: projection.cod().dim(),
                got_cols: projection.dom().dim(),
            }
            .into());
        }
        if !is_epi(&projection) {
            return Err(GpcError::ProjectionNotEpi);
        }
        Ok(PartialDatum {
            coalgebra,
            base,
            apex,
            coaction,
            projection,
        })
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra<S>> {
        &self.coalgebra
    }

    pub fn base(&self) -> &VectorSpace {
        &self.base
    }

    pub fn apex(&self) -> &VectorSpace {
        &self.apex
    }

    /// `ρ : X -> X•H`.
    pub fn coaction(&self) -> &LinearMap<S> {
        &self.coaction
    }

    /// `π : X⊗H -> X•H`.
    pub fn projection(&self) -> &LinearMap<S> {
        &self.projection
    }

    pub fn base_tensor_h(&self) -> VectorSpace {
        self.base.tensor(self.coalgebra.space())
    }

    pub fn same_as(&self, other: &PartialDatum<S>) -> bool {
        self.base.dim() == other.base.dim()
            && self.apex.dim() == other.apex.dim()
            && self.coaction.matrix() == other.coaction.matrix()
            && self.projection.matrix() == other.projection.matrix()
            && self.coalgebra.same_as(&other.coalgebra)
    }
}

impl<S: Scalar> fmt::Debug for PartialDatum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartialDatum(dim X = {}, dim X•H = {}, dim H = {})",
            self.base.dim(),
            self.apex.dim(),
            self.coalgebra.dim()
        )
    }
}

/// The three pushouts every partial comodule datum induces. Leg naming
/// follows the cospan: `left` is the leg out of the first map's codomain.
///
/// * `coaction_square`: pushout of `(π, ρ⊗H)`; apex `(X•H)•H`, legs
///   `ρ•H` (left) and `π_{X•H}` (right).
/// * `comult_square`: pushout of `(π, X⊗Δ)`; apex `X•(H⊗H)`, legs `X•Δ`
///   (left) and `π_{X,Δ}` (right).
/// * `iterated_square`: pushout of `(π_{X,Δ}, π⊗H)`; apex `X•(H•H)`,
///   legs `π'_X` (left) and `π'_{X,Δ}` (right).
#[derive(Clone)]
pub struct CanonicalPushouts<S> {
    pub coaction_square: PushoutResult<S>,
    pub comult_square: PushoutResult<S>,
    pub iterated_square: PushoutResult<S>,
}

impl<S: Scalar> fmt::Debug for CanonicalPushouts<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalPushouts(apex dims {}, {}, {})",
            self.coaction_square.apex.dim(),
            self.comult_square.apex.dim(),
            self.iterated_square.apex.dim()
        )
    }
}

/// Computes the canonical pushouts with deterministic apex bases.
pub fn canonical_pushouts<S: Scalar>(d: &PartialDatum<S>) -> Result<CanonicalPushouts<S>, GpcError> {
    let id_h = LinearMap::identity(d.coalgebra.space());
    let rho_tensor_h = tensor_map(&d.coaction, &id_h);
    let coaction_square = pushout(&d.projection, &rho_tensor_h)?;
    let x_comult = d.coalgebra.comult_on(&d.base);
    let comult_square = pushout(&d.projection, &x_comult)?;
    let pi_tensor_h = tensor_map(&d.projection, &id_h);
    let iterated_square = pushout(&comult_square.right, &pi_tensor_h)?;
    Ok(CanonicalPushouts {
        coaction_square,
        comult_square,
        iterated_square,
    })
}

/// Structured refusal of the partial-comodule axioms, carrying a
/// machine-checkable witness.
#[derive(Debug, Clone)]
pub enum GpFailure<S> {
    /// The counit of `X⊗H` does not descend along the projection: the
    /// witness is a kernel vector of `π` not killed by `X⊗ε`.
    CounitFactor { kernel_witness: Vec<S> },
    /// The descended counit does not split the partial coaction: at the
    /// witness basis vector, `(X•ε)(ρ(x)) ≠ x`.
    CounitSection {
        basis_index: usize,
        basis_label: String,
        image: Vec<S>,
    },
    /// No comparison map between the iterated apexes: the witness is a
    /// kernel vector of `π'_{X,Δ}` not killed by `π_{X•H}`.
    CoassocComparison { kernel_witness: Vec<S> },
    /// The comparison map exists but is not invertible.
    CoassocNotIso {
        rank: usize,
        dim_dom: usize,
        dim_cod: usize,
    },
    /// The comparison square against the coaction fails.
    CoassocSquare {
        basis_index: usize,
        basis_label: String,
    },
}

impl<S> GpFailure<S> {
    pub fn axiom(&self) -> &'static str {
        match self {
            GpFailure::CounitFactor { .. } | GpFailure::CounitSection { .. } => "GP1",
            _ => "GP2",
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            GpFailure::CounitFactor { .. } => "counit-factor",
            GpFailure::CounitSection { .. } => "counit-section",
            GpFailure::CoassocComparison { .. } => "coassociativity-comparison",
            GpFailure::CoassocNotIso { .. } => "coassociativity-not-iso",
            GpFailure::CoassocSquare { .. } => "coassociativity-square",
        }
    }
}

/// Finds a kernel column of `epi` that `killer` does not annihilate.
fn uncancelled_kernel_vector<S: Scalar>(epi: &LinearMap<S>, killer: &LinearMap<S>) -> Vec<S> {
    let k = kernel(epi);
    let image = killer.compose(&k);
    for c in 0..k.dom().dim() {
        if image.matrix().column(c).iter().any(|v| !v.is_zero()) {
            return k.matrix().column(c);
        }
    }
    unreachable!("factorization failed, so some kernel vector must survive the killer");
}

/// Counitality: seeks `X•ε : X•H -> X` with `(X•ε) ∘ π = X⊗ε` and
/// `(X•ε) ∘ ρ = id`, returning the descended counit or a witness for
/// whichever triangle fails.
pub fn check_counitality<S: Scalar>(d: &PartialDatum<S>) -> Result<LinearMap<S>, GpFailure<S>> {
    let x_eps = d.coalgebra.counit_on(&d.base);
    let factor = factor_through_epi(&x_eps, &d.projection).expect("shapes agree by construction");
    let Some(u) = factor else {
        return Err(GpFailure::CounitFactor {
            kernel_witness: uncancelled_kernel_vector(&d.projection, &x_eps),
        });
    };
    let section = u.compose(&d.coaction);
    let id = Matrix::identity(d.base.dim());
    if section.matrix() != &id {
        let c = (0..d.base.dim())
            .find(|&c| section.matrix().column(c) != id.column(c))
            .expect("some column differs");
        return Err(GpFailure::CounitSection {
            basis_index: c,
            basis_label: d.base.label(c).to_string(),
            image: section.matrix().column(c),
        });
    }
    Ok(u)
}

/// Geometric coassociativity: builds the canonical pushouts, seeks the
/// comparison map `θ : X•(H•H) -> (X•H)•H` with `θ ∘ π'_{X,Δ} = π_{X•H}`
/// (unique if it exists, because `π'_{X,Δ}` is epi), verifies that it is
/// an isomorphism, and checks the square
/// `θ ∘ π'_X ∘ (X•Δ) ∘ ρ = (ρ•H) ∘ ρ`.
pub fn check_coassociativity<S: Scalar>(
    d: &PartialDatum<S>,
) -> Result<(LinearMap<S>, CanonicalPushouts<S>), GpFailure<S>> {
    let pushouts = canonical_pushouts(d).expect("datum shapes are validated");
    let pi_bullet = &pushouts.coaction_square.right;
    let pi_prime_comult = &pushouts.iterated_square.right;
    let factor =
        factor_through_epi(pi_bullet, pi_prime_comult).expect("pushout legs share the domain");
    let Some(theta) = factor else {
        return Err(GpFailure::CoassocComparison {
            kernel_witness: uncancelled_kernel_vector(pi_prime_comult, pi_bullet),
        });
    };
    if !is_iso(&theta) {
        return Err(GpFailure::CoassocNotIso {
            rank: theta.rank(),
            dim_dom: theta.dom().dim(),
            dim_cod: theta.cod().dim(),
        });
    }
    let lhs = theta
        .compose(&pushouts.iterated_square.left)
        .compose(&pushouts.comult_square.left)
        .compose(&d.coaction);
    let rhs = pushouts.coaction_square.left.compose(&d.coaction);
    if lhs.matrix() != rhs.matrix() {
        let c = (0..d.base.dim())
            .find(|&c| lhs.matrix().column(c) != rhs.matrix().column(c))
            .expect("some column differs");
        return Err(GpFailure::CoassocSquare {
            basis_index: c,
            basis_label: d.base.label(c).to_string(),
        });
    }
    Ok((theta, pushouts))
}

/// A verified geometric partial comodule: the datum together with its
/// axiom certificates.
#[derive(Clone)]
pub struct PartialComodule<S> {
    datum: PartialDatum<S>,
    counit_factor: LinearMap<S>,
    theta: LinearMap<S>,
    pushouts: CanonicalPushouts<S>,
}

impl<S: Scalar> fmt::Debug for PartialComodule<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialComodule({:?})", self.datum)
    }
}

impl<S: Scalar> PartialComodule<S> {
    pub fn datum(&self) -> &PartialDatum<S> {
        &self.datum
    }

    /// The descended counit `X•ε : X•H -> X`.
    pub fn counit_factor(&self) -> &LinearMap<S> {
        &self.counit_factor
    }

    /// The coassociativity comparison isomorphism.
    pub fn theta(&self) -> &LinearMap<S> {
        &self.theta
    }

    pub fn pushouts(&self) -> &CanonicalPushouts<S> {
        &self.pushouts
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra<S>> {
        self.datum.coalgebra()
    }

    pub fn base(&self) -> &VectorSpace {
        self.datum.base()
    }

    pub fn apex(&self) -> &VectorSpace {
        self.datum.apex()
    }

    pub fn coaction(&self) -> &LinearMap<S> {
        self.datum.coaction()
    }

    pub fn projection(&self) -> &LinearMap<S> {
        self.datum.projection()
    }
}

/// Verifies both axioms and bundles the certificates.
pub fn check_gpc<S: Scalar>(datum: PartialDatum<S>) -> Result<PartialComodule<S>, GpFailure<S>> {
    let counit_factor = check_counitality(&datum)?;
    let (theta, pushouts) = check_coassociativity(&datum)?;
    Ok(PartialComodule {
        datum,
        counit_factor,
        theta,
        pushouts,
    })
}

/// A global comodule viewed as a partial one: projection the identity,
/// partial coaction the global coaction.
pub fn from_global<S: Scalar>(y: &Comodule<S>) -> Result<PartialComodule<S>, GpFailure<S>> {
    let apex = y.space().tensor(y.coalgebra().space());
    let datum = PartialDatum::new(
        y.coalgebra().clone(),
        y.space().clone(),
        apex.clone(),
        y.coaction().clone().with_cod(apex.clone()),
        LinearMap::identity(&apex),
    )
    .expect("identity projection is epi");
    check_gpc(datum)
}

/// The trivial partial comodule on `V`: `V•H = V`, projection `V⊗ε`,
/// partial coaction the identity.
pub fn trivial_gpc<S: Scalar>(
    v: &VectorSpace,
    coalgebra: &Arc<Coalgebra<S>>,
) -> Result<PartialComodule<S>, GpcError> {
    if coalgebra.dim() == 0 {
        return Err(GpcError::ZeroCoalgebra);
    }
    let datum = PartialDatum::new(
        coalgebra.clone(),
        v.clone(),
        v.clone(),
        LinearMap::identity(v),
        coalgebra.counit_on(v),
    )?;
    Ok(check_gpc(datum).expect("the trivial partial structure satisfies both axioms"))
}

/// A morphism of partial comodules: the base map together with its
/// descent to the partial tensor level.
#[derive(Clone)]
pub struct PartialMorphism<S> {
    pub base_map: LinearMap<S>,
    pub apex_map: LinearMap<S>,
}

impl<S: Scalar> fmt::Debug for PartialMorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartialMorphism(base dim {} -> {}, apex dim {} -> {})",
            self.base_map.dom().dim(),
            self.base_map.cod().dim(),
            self.apex_map.dom().dim(),
            self.apex_map.cod().dim()
        )
    }
}

/// Both defining squares, exactly: `f• ∘ ρ_X = ρ_Y ∘ f` and
/// `f• ∘ π_X = π_Y ∘ (f⊗H)`.
pub fn is_morphism<S: Scalar>(
    source: &PartialDatum<S>,
    target: &PartialDatum<S>,
    f: &LinearMap<S>,
    f_bullet: &LinearMap<S>,
) -> bool {
    if f.dom().dim() != source.base.dim()
        || f.cod().dim() != target.base.dim()
        || f_bullet.dom().dim() != source.apex.dim()
        || f_bullet.cod().dim() != target.apex.dim()
        || !source.coalgebra.same_as(&target.coalgebra)
    {
        return false;
    }
    let id_h = LinearMap::identity(source.coalgebra.space());
    let coaction_square =
        f_bullet.compose(&source.coaction).matrix() == target.coaction.compose(f).matrix();
    let projection_square = f_bullet.compose(&source.projection).matrix()
        == target
            .projection
            .compose(&tensor_map(f, &id_h))
            .matrix();
    coaction_square && projection_square
}

/// Is `g : Y -> X` a morphism from the globally-induced partial structure
/// on `Y` to the partial comodule `X`? Equivalent to the single square
/// `π_X ∘ (g⊗H) ∘ δ_Y = ρ_X ∘ g`.
pub fn is_global_morphism<S: Scalar>(
    g: &LinearMap<S>,
    y: &Comodule<S>,
    x: &PartialComodule<S>,
) -> bool {
    if g.dom().dim() != y.dim()
        || g.cod().dim() != x.base().dim()
        || !y.coalgebra().same_as(x.coalgebra())
    {
        return false;
    }
    let id_h = LinearMap::identity(y.coalgebra().space());
    let lhs = x
        .projection()
        .compose(&tensor_map(g, &id_h))
        .compose(y.coaction());
    let rhs = x.coaction().compose(g);
    lhs.matrix() == rhs.matrix()
}

/// One direction of the correspondence between global morphisms to `X`
/// and equalizing colinear maps into the free comodule: `g ↦ (g⊗H)∘δ_Y`.
pub fn global_to_equalizing<S: Scalar>(g: &LinearMap<S>, y: &Comodule<S>) -> LinearMap<S> {
    let id_h = LinearMap::identity(y.coalgebra().space());
    tensor_map(g, &id_h).compose(y.coaction())
}

/// The other direction: `f ↦ (X⊗ε)∘f` for `f : Y -> X⊗H`.
pub fn equalizing_to_global<S: Scalar>(
    f: &LinearMap<S>,
    base: &VectorSpace,
    coalgebra: &Arc<Coalgebra<S>>,
) -> LinearMap<S> {
    coalgebra.counit_on(base).compose(f)
}

/// A cover: a global comodule with an epimorphism onto a plain space.
#[derive(Clone)]
pub struct Cover<S> {
    comodule: Comodule<S>,
    base: VectorSpace,
    projection: LinearMap<S>,
}

impl<S: Scalar> fmt::Debug for Cover<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cover(dim Y = {}, dim X = {})",
            self.comodule.dim(),
            self.base.dim()
        )
    }
}

impl<S: Scalar> Cover<S> {
    pub fn new(
        comodule: Comodule<S>,
        base: VectorSpace,
        projection: LinearMap<S>,
    ) -> Result<Self, GpcError> {
        if projection.dom().dim() != comodule.dim() || projection.cod().dim() != base.dim() {
            return Err(LaError::ShapeMismatch {
                context: "cover projection",
                expected_rows: base.dim(),
                expected_cols: comodule.dim(),
                got_rows: projection.cod().dim(),
                got_cols: projection.dom().dim(),
            }
            .into());
        }
        if !is_epi(&projection) {
            return Err(GpcError::CoverNotEpi);
        }
        Ok(Cover {
            comodule,
            base,
            projection,
        })
    }

    pub fn comodule(&self) -> &Comodule<S> {
        &self.comodule
    }

    pub fn base(&self) -> &VectorSpace {
        &self.base
    }

    pub fn projection(&self) -> &LinearMap<S> {
        &self.projection
    }

    /// `(p⊗H) ∘ δ_Y : Y -> X⊗H`, the map whose injectivity defines a
    /// proper cover.
    pub fn cogeneration_map(&self) -> LinearMap<S> {
        global_to_equalizing(&self.projection, &self.comodule)
    }
}

/// Induces the partial comodule structure on the cover's base: the pushout
/// of `(p, (p⊗H)∘δ_Y)` equips `X` with `(X•H, ρ, π)`, and `p` becomes a
/// morphism of partial comodules from the global structure on `Y`.
///
/// Panics if the induced datum fails the axioms: the induction theorem
/// guarantees it, so a failure is an engine bug.
pub fn induce<S: Scalar>(cover: &Cover<S>) -> (PartialComodule<S>, PartialMorphism<S>) {
    let q = cover.cogeneration_map();
    let po = pushout(&cover.projection, &q).expect("cover shapes align");
    let datum = PartialDatum::new(
        cover.comodule.coalgebra().clone(),
        cover.base.clone(),
        po.apex.clone(),
        po.left.clone(),
        po.right.clone(),
    )
    .expect("pushout of an epi along any map is epi");
    let gpc = check_gpc(datum)
        .unwrap_or_else(|f| panic!("induced datum must satisfy the axioms, failed {}", f.category()));
    let id_h = LinearMap::identity(cover.comodule.coalgebra().space());
    let apex_map = gpc
        .projection()
        .compose(&tensor_map(&cover.projection, &id_h));
    let morphism = PartialMorphism {
        base_map: cover.projection.clone(),
        apex_map,
    };
    debug_assert!({
        let global = from_global(&cover.comodule).expect("cover comodule is global");
        is_morphism(global.datum(), gpc.datum(), &morphism.base_map, &morphism.apex_map)
    });
    (gpc, morphism)
}

/// A morphism of covers: a colinear map upstairs and a compatible map
/// downstairs.
#[derive(Clone)]
pub struct CoverMorphism<S> {
    pub comodule_map: LinearMap<S>,
    pub base_map: LinearMap<S>,
}

/// Functorial action of induction on a cover morphism `(F, f)`:
/// the descended map `f•H` is produced by the universal property of the
/// source's induction pushout.
pub fn ind_on_morphisms<S: Scalar>(
    source: &Cover<S>,
    target: &Cover<S>,
    morphism: &CoverMorphism<S>,
) -> Result<PartialMorphism<S>, GpcError> {
    let CoverMorphism {
        comodule_map: f_up,
        base_map: f,
    } = morphism;
    if !is_colinear(f_up, source.comodule(), target.comodule()) {
        return Err(GpcError::NotACoverMorphism("upstairs map is not colinear"));
    }
    if target.projection.compose(f_up).matrix() != f.compose(&source.projection).matrix() {
        return Err(GpcError::NotACoverMorphism("the projection square does not commute"));
    }
    let (source_gpc, _) = induce(source);
    let (target_gpc, _) = induce(target);
    let q = source.cogeneration_map();
    let po = pushout(&source.projection, &q).expect("cover shapes align");
    let id_h = LinearMap::identity(source.comodule().coalgebra().space());
    let u = target_gpc.coaction().compose(f);
    let v = target_gpc.projection().compose(&tensor_map(f, &id_h));
    let apex_map = po
        .factor(&u, &v)
        .expect("shapes align")
        .expect("cover morphisms always induce a cocone");
    let result = PartialMorphism {
        base_map: f.clone(),
        apex_map,
    };
    debug_assert!(is_morphism(
        source_gpc.datum(),
        target_gpc.datum(),
        &result.base_map,
        &result.apex_map
    ));
    Ok(result)
}

/// Basis of the space of morphism pairs `(f, f•H)` between two data,
/// solving both squares of the morphism condition as one homogeneous
/// linear system.
pub fn morphism_pair_space<S: Scalar>(
    source: &PartialDatum<S>,
    target: &PartialDatum<S>,
) -> Vec<(Matrix<S>, Matrix<S>)> {
    let (xa, xb) = (source.base.dim(), target.base.dim());
    let (ea, eb) = (source.apex.dim(), target.apex.dim());
    let h = source.coalgebra.dim();
    let f_vars = xb * xa;
    let fb_vars = eb * ea;
    let f_var = |i: usize, j: usize| i * xa + j;
    let fb_var = |i: usize, j: usize| f_vars + i * ea + j;
    let mut sys = LinearSystem::new(f_vars + fb_vars);
    let rho_a = source.coaction.matrix();
    let rho_b = target.coaction.matrix();
    let pi_a = source.projection.matrix();
    let pi_b = target.projection.matrix();
    // f• ∘ ρ_a - ρ_b ∘ f = 0
    for r in 0..eb {
        for c in 0..xa {
            let mut coeffs = vec![S::zero(); f_vars + fb_vars];
            for i in 0..ea {
                if !rho_a[(i, c)].is_zero() {
                    coeffs[fb_var(r, i)] += rho_a[(i, c)].clone();
                }
            }
            for j in 0..xb {
                if !rho_b[(r, j)].is_zero() {
                    coeffs[f_var(j, c)] -= rho_b[(r, j)].clone();
                }
            }
            sys.push(coeffs, S::zero());
        }
    }
    // f• ∘ π_a - π_b ∘ (f⊗H) = 0
    for r in 0..eb {
        for c1 in 0..xa {
            for k in 0..h {
                let c = c1 * h + k;
                let mut coeffs = vec![S::zero(); f_vars + fb_vars];
                for i in 0..ea {
                    if !pi_a[(i, c)].is_zero() {
                        coeffs[fb_var(r, i)] += pi_a[(i, c)].clone();
                    }
                }
                for j in 0..xb {
                    if !pi_b[(r, j * h + k)].is_zero() {
                        coeffs[f_var(j, c1)] -= pi_b[(r, j * h + k)].clone();
                    }
                }
                sys.push(coeffs, S::zero());
            }
        }
    }
    let sol = sys.solve().expect("homogeneous system is consistent");
    sol.nullspace
        .into_iter()
        .map(|v| {
            let f = Matrix::from_fn(xb, xa, |i, j| v[f_var(i, j)].clone());
            let fb = Matrix::from_fn(eb, ea, |i, j| v[fb_var(i, j)].clone());
            (f, fb)
        })
        .collect()
}

/// Searches for an isomorphism of partial comodules by solving the joint
/// morphism system and probing for an invertible base map. When the base
/// map of a morphism pair is invertible, the descended map is forced
/// invertible too; that is asserted, not assumed.
pub fn find_gpc_isomorphism<S: Scalar>(
    source: &PartialComodule<S>,
    target: &PartialComodule<S>,
    rng: &mut impl Rng,
) -> Option<PartialMorphism<S>> {
    let (a, b) = (source.datum(), target.datum());
    if a.base.dim() != b.base.dim() || a.apex.dim() != b.apex.dim() {
        return None;
    }
    let basis = morphism_pair_space(a, b);
    let build = |f: Matrix<S>, fb: Matrix<S>| -> Option<PartialMorphism<S>> {
        let base_map = LinearMap::new(a.base.clone(), b.base.clone(), f).ok()?;
        let apex_map = LinearMap::new(a.apex.clone(), b.apex.clone(), fb).ok()?;
        if !is_iso(&base_map) {
            return None;
        }
        assert!(
            is_iso(&apex_map),
            "invertible base map must force an invertible descended map"
        );
        Some(PartialMorphism { base_map, apex_map })
    };
    if a.base.dim() == 0 {
        return build(Matrix::zero(0, 0), Matrix::identity(a.apex.dim()));
    }
    for (f, fb) in &basis {
        if let Some(found) = build(f.clone(), fb.clone()) {
            return Some(found);
        }
    }
    for _ in 0..64 {
        let mut f = Matrix::zero(b.base.dim(), a.base.dim());
        let mut fb = Matrix::zero(b.apex.dim(), a.apex.dim());
        for (bf, bfb) in &basis {
            let c = S::from_int(rng.random_range(-3..=3));
            if c.is_zero() {
                continue;
            }
            f = f.add(&Matrix::from_fn(f.rows(), f.cols(), |i, j| c.clone() * &bf[(i, j)]));
            fb = fb.add(&Matrix::from_fn(fb.rows(), fb.cols(), |i, j| c.clone() * &bfb[(i, j)]));
        }
        if let Some(found) = build(f, fb) {
            return Some(found);
        }
    }
    None
}

/// The unique comparison of cospans on the same feet: a map
/// `u : from.apex -> to.apex` with `u ∘ ρ_from = ρ_to` and
/// `u ∘ π_from = π_to`, or `None` if no such map exists. Uniqueness is
/// automatic because the joint legs of a datum are epi. If comparisons
/// exist in both directions they are mutually inverse.
pub fn cospan_comparison<S: Scalar>(
    from: &PartialDatum<S>,
    to: &PartialDatum<S>,
) -> Option<LinearMap<S>> {
    if from.base.dim() != to.base.dim() || from.coalgebra.dim() != to.coalgebra.dim() {
        return None;
    }
    let block = |d: &PartialDatum<S>| {
        let dom = VectorSpace::generated(d.base.dim() + d.base.dim() * d.coalgebra.dim(), "j");
        LinearMap::new(
            dom,
            d.apex.clone(),
            d.coaction.matrix().hstack(d.projection.matrix()),
        )
        .expect("block shapes")
    };
    factor_through_epi(&block(to), &block(from)).expect("matching feet")
}

/// The correspondence between morphisms out of a global structure and
/// equalizing maps into the free comodule, verified to be mutually
/// inverse on a concrete pair of inputs.
pub fn verify_global_correspondence<S: Scalar>(
    g: &LinearMap<S>,
    y: &Comodule<S>,
    x: &PartialComodule<S>,
) -> bool {
    if !is_global_morphism(g, y, x) {
        return false;
    }
    let f = global_to_equalizing(g, y);
    let back = equalizing_to_global(&f, x.base(), x.coalgebra());
    if back.matrix() != g.matrix() {
        return false;
    }
    let forward_again = global_to_equalizing(&back, y);
    forward_again.matrix() == f.matrix()
}
