//! Law suites: the deterministic adjunction checks on the fixture corpus
//! and the seeded randomized suites for induction functoriality,
//! faithfulness on proper covers, and the globalization round trips.
//!
//! Each suite returns one [`LawCheck`] per verified law so reports can be
//! rendered uniformly; a failing check carries a human-readable detail.

use rand::Rng;

use crate::comod::Comodule;
use crate::exactla::system::MapSolver;
use crate::exactla::{is_iso, LinearMap, Matrix};
use crate::fixtures;
use crate::globalize::{
    analyze_cover, counit_as_partial_morphism, globalization_of_morphism, globalize, gl,
    roundtrip_gl_ind, roundtrip_ind_gl, trivial_globalization_iso, unit_iso,
};
use crate::gpc::{
    from_global, ind_on_morphisms, is_global_morphism, Cover, CoverMorphism, PartialComodule,
};
use crate::psets;
use crate::random::{
    random_colinear_automorphism, random_cover, random_epi_matrix, rng_from_seed,
};
use crate::scalar::Scalar;
use crate::VectorSpace;

#[derive(Clone, Debug)]
pub struct LawCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl LawCheck {
    fn pass(name: impl Into<String>) -> Self {
        LawCheck {
            name: name.into(),
            pass: true,
            detail: String::new(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        LawCheck {
            name: name.into(),
            pass: false,
            detail: detail.into(),
        }
    }

    fn of(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        if pass {
            LawCheck::pass(name)
        } else {
            LawCheck::fail(name, detail)
        }
    }
}

pub fn all_pass(checks: &[LawCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Both triangle identities of the embedding/globalization adjunction for
/// one globalizable partial comodule.
pub fn triangle_identities<S: Scalar>(x: &PartialComodule<S>) -> (bool, bool) {
    let g = globalize(x)
        .into_result()
        .expect("triangle identities only make sense for globalizable inputs");
    // first triangle: the unit followed by the counit is the identity on Y_X
    let unit = unit_iso(&g.comodule().clone());
    let jg = from_global(g.comodule()).expect("globalizations are global comodules");
    let g_of_jg = globalize(&jg)
        .into_result()
        .expect("global comodules are globalizable");
    let first = g_of_jg.counit().compose(unit.map()).matrix() == &Matrix::identity(g.comodule().dim());
    // second triangle: G(ε_X) after the unit of Y_X is the identity
    let eps = counit_as_partial_morphism(&g, x);
    let g_eps = globalization_of_morphism(&eps, &g_of_jg, &g);
    let second = g_eps.map().compose(unit.map()).matrix() == &Matrix::identity(g.comodule().dim());
    (first, second)
}

/// The adjunction suite on the fixture corpus: unit isomorphisms, the
/// counit as a morphism of partial comodules, triangle identities, and
/// the identification of the globalized trivial structure with the free
/// comodule.
pub fn adjunction_suite<S: Scalar>() -> Vec<LawCheck> {
    let mut checks = Vec::new();
    for (cname, coalgebra) in fixtures::fixture_coalgebras::<S>() {
        for v_dim in 1..=3usize {
            let name = format!("free-globalization:{cname}:dim{v_dim}");
            let v = VectorSpace::generated(v_dim, "t");
            match trivial_globalization_iso(&v, &coalgebra) {
                Ok((g, iso)) => {
                    checks.push(LawCheck::of(
                        &name,
                        is_iso(iso.map()),
                        "embedding is not an isomorphism onto the free comodule",
                    ));
                    let trivial = crate::gpc::trivial_gpc(&v, &coalgebra).expect("nonzero coalgebra");
                    checks.push(LawCheck::of(
                        format!("counit-is-morphism:{cname}:dim{v_dim}"),
                        is_global_morphism(g.counit(), g.comodule(), &trivial),
                        "the counit fails the morphism square",
                    ));
                    let (t1, t2) = triangle_identities(&trivial);
                    checks.push(LawCheck::of(
                        format!("triangle-1:{cname}:trivial{v_dim}"),
                        t1,
                        "counit ∘ unit ≠ id",
                    ));
                    checks.push(LawCheck::of(
                        format!("triangle-2:{cname}:trivial{v_dim}"),
                        t2,
                        "G(counit) ∘ unit ≠ id",
                    ));
                }
                Err(e) => checks.push(LawCheck::fail(&name, e.to_string())),
            }
        }
    }
    for (yname, y) in fixtures::fixture_comodules::<S>() {
        let unit = unit_iso(&y);
        checks.push(LawCheck::of(
            format!("unit-iso:{yname}"),
            is_iso(unit.map()),
            "unit comparison is not an isomorphism",
        ));
        let x = from_global(&y).expect("fixture comodules are lawful");
        let g = globalize(&x).into_result().expect("global comodules are globalizable");
        checks.push(LawCheck::of(
            format!("counit-is-morphism:{yname}"),
            is_global_morphism(g.counit(), g.comodule(), &x),
            "the counit fails the morphism square",
        ));
        let (t1, t2) = triangle_identities(&x);
        checks.push(LawCheck::of(format!("triangle-1:{yname}"), t1, "counit ∘ unit ≠ id"));
        checks.push(LawCheck::of(format!("triangle-2:{yname}"), t2, "G(counit) ∘ unit ≠ id"));
    }
    checks
}

/// A composable random pair of cover morphisms out of a random cover:
/// `(Y, X1, p1) -> (Y, X2, p2) -> (Y, X3, p3)` with invertible upstairs
/// maps so the downstairs projections stay surjective.
fn random_morphism_step<S: Scalar, R: Rng>(
    source: &Cover<S>,
    rng: &mut R,
) -> (Cover<S>, CoverMorphism<S>) {
    let y = source.comodule().clone();
    let up = random_colinear_automorphism(&y, rng);
    let down_dim = rng.random_range(1..=source.base().dim());
    let down_space = VectorSpace::generated(down_dim, "w");
    let down = LinearMap::new(
        source.base().clone(),
        down_space.clone(),
        random_epi_matrix(source.base().dim(), down_dim, rng),
    )
    .expect("shapes");
    let projection = down
        .compose(source.projection())
        .compose(&up.inverse().expect("automorphism"));
    let target = Cover::new(y, down_space, projection).expect("composite of epis");
    (
        target,
        CoverMorphism {
            comodule_map: up,
            base_map: down,
        },
    )
}

fn random_morphism_chain<S: Scalar, R: Rng>(
    cover: &Cover<S>,
    rng: &mut R,
) -> (Cover<S>, Cover<S>, CoverMorphism<S>, CoverMorphism<S>) {
    let (c2, m1) = random_morphism_step(cover, rng);
    let (c3, m2) = random_morphism_step(&c2, rng);
    (c2, c3, m1, m2)
}

/// Functor laws for induction on randomized instances: identities map to
/// identities, composites to composites, and on proper covers the induced
/// morphism determines the upstairs map (faithfulness).
pub fn functor_suite<S: Scalar>(seed: u64, instances: usize) -> Vec<LawCheck> {
    let mut rng = rng_from_seed(seed);
    let coalgebras = fixtures::fixture_coalgebras::<S>();
    let mut identity_ok = 0usize;
    let mut composite_ok = 0usize;
    let mut faithful_ok = 0usize;
    let mut failures: Vec<String> = Vec::new();
    for i in 0..instances {
        let (cname, coalgebra) = &coalgebras[rng.random_range(0..coalgebras.len())];
        let cover = random_cover(coalgebra, 5, &mut rng);

        let identity = CoverMorphism {
            comodule_map: LinearMap::identity(cover.comodule().space()),
            base_map: LinearMap::identity(cover.base()),
        };
        let ind_id = ind_on_morphisms(&cover, &cover, &identity).expect("identity is a cover morphism");
        if ind_id.base_map.matrix() == &Matrix::identity(cover.base().dim())
            && ind_id.apex_map.matrix() == &Matrix::identity(ind_id.apex_map.dom().dim())
        {
            identity_ok += 1;
        } else {
            failures.push(format!("instance {i} over {cname}: Ind(id) ≠ id"));
        }

        let (c2, c3, m1, m2) = random_morphism_chain(&cover, &mut rng);
        let ind1 = ind_on_morphisms(&cover, &c2, &m1).expect("chain step is a cover morphism");
        let ind2 = ind_on_morphisms(&c2, &c3, &m2).expect("chain step is a cover morphism");
        let composite = CoverMorphism {
            comodule_map: m2.comodule_map.compose(&m1.comodule_map),
            base_map: m2.base_map.compose(&m1.base_map),
        };
        let ind12 = ind_on_morphisms(&cover, &c3, &composite).expect("composite is a cover morphism");
        if ind12.apex_map.matrix() == ind2.apex_map.compose(&ind1.apex_map).matrix() {
            composite_ok += 1;
        } else {
            failures.push(format!("instance {i} over {cname}: Ind(g∘f) ≠ Ind(g)∘Ind(f)"));
        }

        // faithfulness on a proper target: minimalize c2, then the upstairs
        // component of any cover morphism with a fixed downstairs map is the
        // unique solution of an (asserted) zero-nullity linear system
        let analysis = analyze_cover(&c2);
        let proper_cover = gl(&analysis.induced)
            .expect("induced structures are globalizable")
            .0;
        let to_proper = CoverMorphism {
            comodule_map: analysis
                .comparison
                .map()
                .compose(&m1.comodule_map),
            base_map: m1.base_map.clone(),
        };
        debug_assert!(crate::globalize::is_proper(&proper_cover));
        if ind_on_morphisms(&cover, &proper_cover, &to_proper).is_ok() {
            let y_up = proper_cover.comodule();
            let mut solver = MapSolver::new(y_up.dim(), cover.comodule().dim());
            solver.require_colinear(
                y_up.coaction().matrix(),
                cover.comodule().coaction().matrix(),
                coalgebra.dim(),
            );
            solver.require_left(
                proper_cover.projection().matrix(),
                to_proper
                    .base_map
                    .compose(cover.projection())
                    .matrix(),
            );
            match solver.solve() {
                Some(solution)
                    if solution.is_unique()
                        && &solution.particular == to_proper.comodule_map.matrix() =>
                {
                    faithful_ok += 1
                }
                _ => failures.push(format!(
                    "instance {i} over {cname}: upstairs map not unique over the proper cover"
                )),
            }
        } else {
            failures.push(format!("instance {i} over {cname}: minimalized morphism rejected"));
        }
    }
    vec![
        LawCheck::of(
            format!("ind-identity ({identity_ok}/{instances})"),
            identity_ok == instances,
            failures.join("; "),
        ),
        LawCheck::of(
            format!("ind-composition ({composite_ok}/{instances})"),
            composite_ok == instances,
            failures.join("; "),
        ),
        LawCheck::of(
            format!("ind-faithful-on-proper ({faithful_ok}/{instances})"),
            faithful_ok == instances,
            failures.join("; "),
        ),
    ]
}

/// Randomized regression for induction and the round trips: every induced
/// datum passes both axioms (asserted inside `induce`), globalizes, and
/// the two round trips close up to their canonical isomorphisms.
pub fn roundtrip_suite<S: Scalar>(seed: u64, instances: usize) -> Vec<LawCheck> {
    let mut rng = rng_from_seed(seed);
    let coalgebras = fixtures::fixture_coalgebras::<S>();
    let mut ok = 0usize;
    let mut failures = Vec::new();
    for i in 0..instances {
        let (cname, coalgebra) = &coalgebras[rng.random_range(0..coalgebras.len())];
        let cover = random_cover(coalgebra, 6, &mut rng);
        let analysis = analyze_cover(&cover);
        let x = &analysis.induced;
        match roundtrip_ind_gl(x) {
            Ok(witness) if is_iso(&witness.apex_map) => {}
            _ => {
                failures.push(format!("instance {i} over {cname}: Ind(Gl(X)) ≇ X"));
                continue;
            }
        }
        let minimal_cover = gl(x).expect("induced structures globalize").0;
        let re_analysis = analyze_cover(&minimal_cover);
        if !(re_analysis.proper && re_analysis.minimal) {
            failures.push(format!(
                "instance {i} over {cname}: Gl(X) is not a minimal proper cover"
            ));
            continue;
        }
        match roundtrip_gl_ind(&minimal_cover) {
            Ok(iso) if is_iso(iso.map()) => ok += 1,
            _ => failures.push(format!("instance {i} over {cname}: Gl(Ind(c)) ≇ c")),
        }
    }
    vec![LawCheck::of(
        format!("globalization-roundtrips ({ok}/{instances})"),
        ok == instances,
        failures.join("; "),
    )]
}

/// Quick oracle checks on the set backend fixtures.
pub fn pset_suite() -> Vec<LawCheck> {
    let mut checks = Vec::new();
    for (name, partial) in fixtures::fixture_partial_actions() {
        let agreement = psets::oracle_agreement(&partial);
        checks.push(LawCheck::of(
            format!("pset-oracle:{name}"),
            agreement.is_ok(),
            agreement.err().map(|e| e.to_string()).unwrap_or_default(),
        ));
        let roundtrip = psets::restrict_globalize_roundtrip(&partial);
        checks.push(LawCheck::of(
            format!("pset-roundtrip:{name}"),
            roundtrip.is_ok(),
            roundtrip.err().map(|e| e.to_string()).unwrap_or_default(),
        ));
    }
    checks
}

/// Verifies membership of a comodule in the fixture corpus law-wise; used
/// by the law suites to fail loudly if the corpus itself regresses.
pub fn fixture_sanity<S: Scalar>() -> Vec<LawCheck> {
    let mut checks = Vec::new();
    for (name, coalgebra) in fixtures::fixture_coalgebras::<S>() {
        checks.push(LawCheck::of(
            format!("coalgebra-laws:{name}"),
            coalgebra.check().is_ok(),
            "fixture coalgebra violates its laws",
        ));
    }
    for (name, comodule) in fixtures::fixture_comodules::<S>() {
        checks.push(LawCheck::of(
            format!("comodule-laws:{name}"),
            comodule.check().is_ok(),
            "fixture comodule violates its laws",
        ));
    }
    checks
}

/// Sanity check used by tests: a comodule equals another up to the pair
/// of mutually inverse colinear maps.
pub fn comodules_isomorphic_via<S: Scalar>(
    forward: &crate::comod::ComoduleMorphism<S>,
    a: &Comodule<S>,
    b: &Comodule<S>,
) -> bool {
    forward.source().same_as(a) && forward.target().same_as(b) && is_iso(forward.map())
}
