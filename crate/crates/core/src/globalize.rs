//! The globalization engine for the linear backend.
//!
//! A partial comodule `X` is globalizable exactly when the equalizer
//! `(Y_X, κ)` of the parallel pair on the free comodule `X⊗H` exists in
//! the comodule category — automatic here, the category is complete — and
//! the square it induces back onto the defining cospan is a pushout. The
//! second condition is decided by a comparison map: the fresh pushout of
//! `(ε_X, κ)` maps canonically onto `X•H`, and it is a pushout square if
//! and only if that comparison is an isomorphism (comparisons between
//! cospans over the same feet are unique, so this test is sound and
//! complete). Failure is a value carrying the comparison and its kernel.
//!
//! On every success the engine asserts the structural identities of the
//! construction: `κ` mono, `ε_X` epi, `ε_X = (X⊗ε)∘κ`, and
//! `κ = (ε_X⊗H)∘δ_{Y_X}`; a violation is an engine bug and panics.
//!
//! A consequence worth recording: in this exact linear backend the
//! comparison `p̃ : Y -> Y_X` of *any* cover is surjective (apply
//! `X•H ⊗ ε` to the equalizer condition to see that every equalizing
//! vector is congruent, modulo `ker π ⊆ im((p⊗H)∘δ_Y)`, to a lift from
//! `Y`), so a cover is minimal precisely when it is proper. Non-minimal
//! proper covers exist in other backends (e.g. topological), but not
//! here; `analyze_cover` still reports the two flags independently, each
//! computed from its own definition.

use thiserror::Error;

use crate::comod::{
    comodule_equalizer, free_comodule, Comodule, ComoduleMorphism,
};
use crate::exactla::system::MapSolver;
use crate::exactla::{
    factor_through_mono, is_epi, is_iso, is_mono, kernel, pushout, tensor_map, LinearMap,
    VectorSpace,
};
use crate::gpc::{
    cospan_comparison, equalizing_to_global, global_to_equalizing, induce, is_global_morphism,
    Cover, GpcError, PartialComodule, PartialMorphism,
};
use crate::scalar::Scalar;

/// A successful globalization: the universal global comodule `Y_X`, its
/// embedding into the free comodule, the counit onto the base, and the
/// comparison isomorphism certifying the pushout condition.
#[derive(Clone)]
pub struct Globalization<S> {
    comodule: Comodule<S>,
    embedding: ComoduleMorphism<S>,
    counit: LinearMap<S>,
    comparison: LinearMap<S>,
}

impl<S: Scalar> std::fmt::Debug for Globalization<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Globalization(dim Y_X = {}, base dim {})",
            self.comodule.dim(),
            self.counit.cod().dim()
        )
    }
}

impl<S: Scalar> Globalization<S> {
    /// The globalization `Y_X`.
    pub fn comodule(&self) -> &Comodule<S> {
        &self.comodule
    }

    /// The equalizer inclusion `κ : Y_X -> X⊗H`.
    pub fn embedding(&self) -> &ComoduleMorphism<S> {
        &self.embedding
    }

    /// The counit `ε_X : Y_X -> X`.
    pub fn counit(&self) -> &LinearMap<S> {
        &self.counit
    }

    /// The comparison isomorphism from the fresh pushout onto `X•H`.
    pub fn comparison(&self) -> &LinearMap<S> {
        &self.comparison
    }
}

/// Refutation witness: the comparison map onto `X•H` together with its
/// kernel. The comparison is always surjective (the projection leg alone
/// is epi), so failure always means a nontrivial kernel.
#[derive(Clone)]
pub struct Obstruction<S> {
    pub comparison: LinearMap<S>,
    pub kernel_witness: Vec<S>,
    pub rank: usize,
}

impl<S: Scalar> std::fmt::Debug for Obstruction<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Obstruction(comparison rank {} of dim {} -> {})",
            self.rank,
            self.comparison.dom().dim(),
            self.comparison.cod().dim()
        )
    }
}

#[derive(Clone)]
pub enum GlobalizationOutcome<S> {
    Globalizable(Globalization<S>),
    NotGlobalizable(Obstruction<S>),
}

impl<S: Scalar> std::fmt::Debug for GlobalizationOutcome<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlobalizationOutcome::Globalizable(g) => write!(f, "Globalizable({g:?})"),
            GlobalizationOutcome::NotGlobalizable(o) => write!(f, "NotGlobalizable({o:?})"),
        }
    }
}

impl<S> GlobalizationOutcome<S> {
    pub fn globalizable(&self) -> bool {
        matches!(self, GlobalizationOutcome::Globalizable(_))
    }

    pub fn into_result(self) -> Result<Globalization<S>, Obstruction<S>> {
        match self {
            GlobalizationOutcome::Globalizable(g) => Ok(g),
            GlobalizationOutcome::NotGlobalizable(o) => Err(o),
        }
    }
}

#[derive(Debug, Error)]
pub enum GlobalizeError {
    #[error(transparent)]
    Gpc(#[from] GpcError),
    #[error("candidate {0} is not a morphism of partial comodules into the target")]
    CandidateNotMorphism(usize),
    #[error("the cover is not proper, so it cannot be equivalent to a globalization cover")]
    NotProper,
    #[error("the cover comparison onto the globalization is not an isomorphism")]
    ComparisonNotIso,
}

/// The parallel pair on the free comodule `(X⊗H, X⊗Δ)` whose equalizer is
/// the globalization candidate: `ρ⊗H` and `(π⊗H)∘(X⊗Δ)`, both landing in
/// the free comodule on `X•H`. Both maps are colinear; that is asserted
/// by construction of the returned morphisms.
pub fn globalization_pair<S: Scalar>(
    x: &PartialComodule<S>,
) -> (ComoduleMorphism<S>, ComoduleMorphism<S>) {
    let coalgebra = x.coalgebra();
    let free_base = free_comodule(x.base(), coalgebra);
    let free_apex = free_comodule(x.apex(), coalgebra);
    let id_h = LinearMap::identity(coalgebra.space());
    let a = tensor_map(x.coaction(), &id_h)
        .with_dom(free_base.space().clone())
        .with_cod(free_apex.space().clone());
    let b = tensor_map(x.projection(), &id_h)
        .compose(&coalgebra.comult_on(x.base()))
        .with_dom(free_base.space().clone())
        .with_cod(free_apex.space().clone());
    let a = ComoduleMorphism::new(free_base.clone(), free_apex.clone(), a)
        .expect("ρ⊗H is colinear between free comodules");
    let b = ComoduleMorphism::new(free_base, free_apex, b)
        .expect("(π⊗H)∘(X⊗Δ) is colinear between free comodules");
    (a, b)
}

/// Decides globalizability and constructs the globalization.
pub fn globalize<S: Scalar>(x: &PartialComodule<S>) -> GlobalizationOutcome<S> {
    let (a, b) = globalization_pair(x);
    let (y_x, embedding) =
        comodule_equalizer(&a, &b).expect("the pair is parallel and colinear by construction");
    let counit = equalizing_to_global(embedding.map(), x.base(), x.coalgebra());
    let po = pushout(&counit, embedding.map()).expect("shared domain Y_X");
    let comparison = po
        .factor(x.coaction(), x.projection())
        .expect("shapes align")
        .expect("(ρ, π) is a cocone over (ε_X, κ): ρ∘ε_X = π∘κ");
    if !is_iso(&comparison) {
        let kernel_map = kernel(&comparison);
        return GlobalizationOutcome::NotGlobalizable(Obstruction {
            rank: comparison.rank(),
            kernel_witness: kernel_map.matrix().column(0),
            comparison,
        });
    }
    // structural identities of the construction, asserted on every success
    assert!(is_mono(embedding.map()), "equalizer inclusion must be mono");
    assert!(is_epi(&counit), "the counit of a globalization must be epi");
    let id_h = LinearMap::identity(x.coalgebra().space());
    assert_eq!(
        tensor_map(&counit, &id_h).compose(y_x.coaction()).matrix(),
        embedding.map().matrix(),
        "κ must equal (ε_X⊗H)∘δ"
    );
    GlobalizationOutcome::Globalizable(Globalization {
        comodule: y_x,
        embedding,
        counit,
        comparison,
    })
}

/// `(p⊗H)∘δ_Y` is injective: the cover carries no superfluous part.
pub fn is_proper<S: Scalar>(cover: &Cover<S>) -> bool {
    is_mono(&cover.cogeneration_map())
}

/// Full analysis of a cover: its induced partial comodule, the
/// globalization of that structure, the canonical comparison
/// `p̃ : Y -> Y_X` (the corestriction of `(p⊗H)∘δ_Y` through `κ`), and
/// the properness/minimality flags.
#[derive(Clone)]
pub struct CoverAnalysis<S> {
    pub proper: bool,
    pub minimal: bool,
    pub comparison: ComoduleMorphism<S>,
    pub induced: PartialComodule<S>,
    pub globalization: Globalization<S>,
}

impl<S: Scalar> std::fmt::Debug for CoverAnalysis<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CoverAnalysis(proper: {}, minimal: {})",
            self.proper, self.minimal
        )
    }
}

pub fn analyze_cover<S: Scalar>(cover: &Cover<S>) -> CoverAnalysis<S> {
    let (induced, _) = induce(cover);
    let globalization = globalize(&induced)
        .into_result()
        .expect("induced partial comodules are always globalizable");
    let cogeneration = cover.cogeneration_map();
    let p_tilde = factor_through_mono(&cogeneration, globalization.embedding.map())
        .expect("shapes align")
        .expect("the cogeneration map equalizes the pair, so it corestricts through κ");
    let p_tilde = p_tilde
        .with_dom(cover.comodule().space().clone())
        .with_cod(globalization.comodule.space().clone());
    assert_eq!(
        globalization.counit.compose(&p_tilde).matrix(),
        cover.projection().matrix(),
        "ε_X ∘ p̃ must recover the cover projection"
    );
    let comparison = ComoduleMorphism::new(
        cover.comodule().clone(),
        globalization.comodule.clone(),
        p_tilde,
    )
    .expect("p̃ is colinear: κ∘p̃ is colinear and κ is a mono of comodules");
    CoverAnalysis {
        proper: is_mono(&cogeneration),
        minimal: is_iso(comparison.map()),
        comparison,
        induced,
        globalization,
    }
}

/// Packages a globalization as the cover `(Y_X, X, ε_X)`.
pub fn gl<S: Scalar>(
    x: &PartialComodule<S>,
) -> Result<(Cover<S>, Globalization<S>), Obstruction<S>> {
    let g = globalize(x).into_result()?;
    let cover = Cover::new(g.comodule.clone(), x.base().clone(), g.counit.clone())
        .expect("the counit of a globalization is epi");
    Ok((cover, g))
}

/// Round trip partial comodule → cover → partial comodule: inducing from
/// the globalization cover recovers `X` up to the canonical comparison
/// isomorphism, returned as an explicit morphism pair (base map the
/// identity).
pub fn roundtrip_ind_gl<S: Scalar>(
    x: &PartialComodule<S>,
) -> Result<PartialMorphism<S>, Obstruction<S>> {
    let (cover, _) = gl(x)?;
    let (induced, _) = induce(&cover);
    let comparison = cospan_comparison(induced.datum(), x.datum())
        .expect("the globalization pushout and X•H are pushouts of the same span");
    assert!(is_iso(&comparison), "cospan comparison of two pushouts of one span is iso");
    let witness = PartialMorphism {
        base_map: LinearMap::identity(x.base()),
        apex_map: comparison,
    };
    debug_assert!(crate::gpc::is_morphism(
        induced.datum(),
        x.datum(),
        &witness.base_map,
        &witness.apex_map
    ));
    Ok(witness)
}

/// Round trip cover → partial comodule → cover: for a proper cover the
/// comparison `p̃` is an isomorphism of covers onto `Gl(Ind(c))`; the
/// explicit colinear iso is returned.
pub fn roundtrip_gl_ind<S: Scalar>(cover: &Cover<S>) -> Result<ComoduleMorphism<S>, GlobalizeError> {
    let analysis = analyze_cover(cover);
    if !analysis.proper {
        return Err(GlobalizeError::NotProper);
    }
    if !is_iso(analysis.comparison.map()) {
        return Err(GlobalizeError::ComparisonNotIso);
    }
    Ok(analysis.comparison)
}

/// Outcome of probing one universal-property candidate.
#[derive(Clone)]
pub struct UniversalWitness<S> {
    pub mediating: LinearMap<S>,
    pub unique: bool,
    pub agrees_with_corestriction: bool,
}

/// Universality of the globalization: for each global candidate
/// `(Z, q : Z -> X)` that is a morphism of partial comodules, solves for
/// a colinear `η : Z -> Y_X` with `ε_X ∘ η = q` as one linear system and
/// verifies existence and uniqueness (zero homogeneous solution space).
/// Each solution is cross-checked against the independent corestriction
/// route `η = κ⁻¹∘(q⊗H)∘δ_Z`.
pub fn check_universal_property<S: Scalar>(
    globalization: &Globalization<S>,
    x: &PartialComodule<S>,
    candidates: &[(Comodule<S>, LinearMap<S>)],
) -> Result<Vec<UniversalWitness<S>>, GlobalizeError> {
    let mut witnesses = Vec::new();
    for (index, (z, q)) in candidates.iter().enumerate() {
        if !is_global_morphism(q, z, x) {
            return Err(GlobalizeError::CandidateNotMorphism(index));
        }
        let y_x = &globalization.comodule;
        let mut solver = MapSolver::new(y_x.dim(), z.dim());
        solver.require_colinear(
            y_x.coaction().matrix(),
            z.coaction().matrix(),
            x.coalgebra().dim(),
        );
        solver.require_left(globalization.counit.matrix(), q.matrix());
        let solution = solver
            .solve()
            .expect("a mediating morphism exists for every valid candidate");
        let mediating = LinearMap::new(
            z.space().clone(),
            y_x.space().clone(),
            solution.particular.clone(),
        )
        .expect("solver shapes");
        let corestricted = factor_through_mono(
            &global_to_equalizing(q, z),
            globalization.embedding.map(),
        )
        .expect("shapes align")
        .expect("(q⊗H)∘δ_Z equalizes the pair");
        witnesses.push(UniversalWitness {
            agrees_with_corestriction: corestricted.matrix() == mediating.matrix(),
            unique: solution.is_unique(),
            mediating,
        });
    }
    Ok(witnesses)
}

/// The unit comparison `Y ≅ Y_{I(Y)}` for a global comodule: the
/// comparison of the identity cover, which must be a colinear iso.
pub fn unit_iso<S: Scalar>(y: &Comodule<S>) -> ComoduleMorphism<S> {
    let cover = Cover::new(
        y.clone(),
        y.space().clone(),
        LinearMap::identity(y.space()),
    )
    .expect("identity is epi");
    let analysis = analyze_cover(&cover);
    assert!(
        is_iso(analysis.comparison.map()),
        "the unit comparison of a global comodule must be an isomorphism"
    );
    analysis.comparison
}

/// Functorial action of globalization on a morphism of partial comodules:
/// `G(f) : Y_X -> Y_{X'}` is the corestriction of `(f⊗H)∘κ` through `κ'`,
/// the unique colinear map with `ε' ∘ G(f) = f ∘ ε` (asserted).
pub fn globalization_of_morphism<S: Scalar>(
    f: &PartialMorphism<S>,
    source: &Globalization<S>,
    target: &Globalization<S>,
) -> ComoduleMorphism<S> {
    let id_h = LinearMap::identity(
        source
            .comodule
            .coalgebra()
            .space(),
    );
    let pushed = tensor_map(&f.base_map, &id_h).compose(source.embedding.map());
    let mapped = factor_through_mono(&pushed, target.embedding.map())
        .expect("shapes align")
        .expect("(f⊗H)∘κ equalizes the target pair");
    let mapped = mapped
        .with_dom(source.comodule.space().clone())
        .with_cod(target.comodule.space().clone());
    assert_eq!(
        target.counit.compose(&mapped).matrix(),
        f.base_map.compose(&source.counit).matrix(),
        "G(f) must intertwine the counits"
    );
    ComoduleMorphism::new(source.comodule.clone(), target.comodule.clone(), mapped)
        .expect("corestrictions through κ' are colinear")
}

/// The counit `ε_X` as a morphism of partial comodules from the global
/// structure on `Y_X` to `X`: `(ε_X, π∘(ε_X⊗H))`.
pub fn counit_as_partial_morphism<S: Scalar>(
    globalization: &Globalization<S>,
    x: &PartialComodule<S>,
) -> PartialMorphism<S> {
    let id_h = LinearMap::identity(x.coalgebra().space());
    let apex_map = x
        .projection()
        .compose(&tensor_map(&globalization.counit, &id_h));
    PartialMorphism {
        base_map: globalization.counit.clone(),
        apex_map,
    }
}

/// Free-space comparison helper used by the adjunction suite: the
/// embedding `κ` of the globalization of the trivial partial structure on
/// `v`, checked to be an isomorphism onto the free comodule, with the
/// counit matching `v⊗ε` under it.
pub fn trivial_globalization_iso<S: Scalar>(
    v: &VectorSpace,
    coalgebra: &std::sync::Arc<crate::comod::Coalgebra<S>>,
) -> Result<(Globalization<S>, ComoduleMorphism<S>), GlobalizeError> {
    let trivial = crate::gpc::trivial_gpc(v, coalgebra)?;
    let g = globalize(&trivial)
        .into_result()
        .expect("trivial partial structures are globalizable");
    let free = free_comodule(v, coalgebra);
    assert!(
        is_iso(g.embedding.map()),
        "the globalization of a trivial structure must fill the free comodule"
    );
    let iso = ComoduleMorphism::new(g.comodule.clone(), free, g.embedding.map().clone())
        .expect("κ is colinear into the free comodule");
    assert_eq!(
        g.counit.matrix(),
        coalgebra.counit_on(v).compose(iso.map()).matrix(),
        "under κ the counit must be v⊗ε"
    );
    Ok((g, iso))
}

#[cfg(test)]
mod tests;
