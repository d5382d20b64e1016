use std::collections::BTreeSet;

use super::*;
use crate::fixtures::{
    c2_point_restriction, c2_swap, c4_translation, c4_two_point_restriction, cyclic_group,
    dihedral, groups_up_to_order_six, symmetric3,
};
use rand::Rng;

#[test]
fn restrictions_satisfy_the_partial_action_laws() {
    for (global, subset) in [
        (c2_swap(), BTreeSet::from([0])),
        (c4_translation(), BTreeSet::from([0, 1])),
        (c4_translation(), BTreeSet::from([0, 1, 2, 3])),
    ] {
        let p = restrict(&global, &subset).unwrap();
        assert!(p.check().is_ok());
    }
}

#[test]
fn full_carrier_restriction_is_global() {
    let global = c4_translation();
    let p = restrict(&global, &(0..4).collect()).unwrap();
    assert_eq!(p.domain().len(), 16, "G•X must be all of G×X");
}

#[test]
fn broken_unit_law_is_reported() {
    let c2 = cyclic_group(2);
    // α(e, x) = y ≠ x
    let domain = BTreeSet::from([(0, 0), (0, 1)]);
    let map = BTreeMap::from([((0, 0), 1), ((0, 1), 0)]);
    let p = PartialGSet::new(c2, vec!["x".into(), "y".into()], domain, map).unwrap();
    match p.check() {
        Err(PsetError::Law { law: "unit", .. }) => {}
        other => panic!("expected a unit-law failure, got {other:?}"),
    }
}

#[test]
fn dropped_inverse_pair_is_reported() {
    // start from the swap restricted to both points, then drop (s, 2)
    let global = c2_swap();
    let full = restrict(&global, &BTreeSet::from([0, 1])).unwrap();
    let mut domain = full.domain().clone();
    domain.remove(&(1, 1));
    let map: BTreeMap<(usize, usize), usize> = domain
        .iter()
        .map(|&(g, x)| ((g, x), full.alpha(g, x).unwrap()))
        .collect();
    let p = PartialGSet::new(
        full.monoid().clone(),
        full.carrier().to_vec(),
        domain,
        map,
    )
    .unwrap();
    match p.check() {
        Err(PsetError::Law { law: "inversion", .. }) => {}
        other => panic!("expected an inversion-law failure, got {other:?}"),
    }
}

#[test]
fn swap_restricted_to_a_point_globalizes_to_two_points() {
    let p = c2_point_restriction();
    let glob = globalize_quotient(&p).unwrap();
    assert_eq!(glob.size(), 2);
    // the embedded point is [e, 1]; the second class is [s, 1]
    assert_eq!(glob.embed, vec![glob.class_of[0][0]]);
    assert_ne!(glob.class_of[1][0], glob.class_of[0][0]);
    // the reconstructed action swaps the two classes
    let a = glob.embed[0];
    let s = 1;
    let other = glob.global.act(s, a);
    assert_ne!(other, a);
    assert_eq!(glob.global.act(s, other), a);
}

#[test]
fn c4_restriction_globalizes_to_the_regular_action() {
    let p = c4_two_point_restriction();
    let glob = globalize_quotient(&p).unwrap();
    assert_eq!(glob.size(), 4);
    // classes merge (g, x) with (g', x') exactly when g + x = g' + x'
    for g in 0..4 {
        for x in 0..2 {
            for g2 in 0..4 {
                for x2 in 0..2 {
                    let same = (g + x) % 4 == (g2 + x2) % 4;
                    assert_eq!(
                        glob.class_of[g][x] == glob.class_of[g2][x2],
                        same,
                        "classes must be fibers of g + x"
                    );
                }
            }
        }
    }
    // and the result is equivariantly isomorphic to the translation action
    let iso = find_gset_isomorphism(&glob.global, &c4_translation());
    assert!(iso.is_some(), "globalization must be the regular C4-set");
}

#[test]
fn full_restriction_globalizes_to_the_original_carrier() {
    let global = c4_translation();
    let p = restrict(&global, &(0..4).collect()).unwrap();
    let glob = globalize_quotient(&p).unwrap();
    assert_eq!(glob.size(), 4);
    let iso = find_gset_isomorphism(&glob.global, &global);
    assert!(iso.is_some());
}

#[test]
fn coequalizer_route_agrees_on_the_reference_examples() {
    for p in [
        c2_point_restriction(),
        c4_two_point_restriction(),
        restrict(&c4_translation(), &(0..4).collect()).unwrap(),
    ] {
        let (quotient, coeq) = oracle_agreement(&p).unwrap();
        assert_eq!(quotient.size(), coeq.size());
        assert_eq!(quotient.class_of, coeq.class_of);
    }
}

#[test]
fn coequalizer_pair_maps_are_the_expected_tables() {
    let p = c2_point_restriction();
    let (dom, acted, multiplied) = coequalizer_pair(&p).unwrap();
    // G•X = {(e, 1)}, so the pair domain is {(e,(e,1)), (s,(e,1))}
    assert_eq!(dom.len(), 2);
    assert_eq!(acted, vec![(0, 0), (1, 0)]);
    assert_eq!(multiplied, vec![(0, 0), (1, 0)]);
}

#[test]
fn phi_psi_witnesses_verify_on_the_examples() {
    for p in [c2_point_restriction(), c4_two_point_restriction()] {
        assert!(verify_phi_psi(&p).is_ok());
    }
}

#[test]
fn roundtrip_is_exact_on_the_reference_examples() {
    for p in [c2_point_restriction(), c4_two_point_restriction()] {
        let bijection = restrict_globalize_roundtrip(&p).unwrap();
        assert_eq!(bijection.len(), p.size());
    }
}

#[test]
fn roundtrip_is_exact_on_random_restrictions() {
    // random global actions of groups of order ≤ 8 on ≤ 6 points,
    // restricted to random nonempty subsets
    let mut rng = crate::random::rng_from_seed(404);
    let mut groups = groups_up_to_order_six()
        .into_iter()
        .map(|(_, g)| g)
        .collect::<Vec<_>>();
    groups.push(cyclic_group(7));
    groups.push(cyclic_group(8));
    groups.push(dihedral(4));
    for _ in 0..60 {
        let group = &groups[rng.random_range(0..groups.len())];
        let actions = crate::fixtures::all_actions_up_to_iso(group, 6);
        let action = &actions[rng.random_range(0..actions.len())];
        let subset: BTreeSet<usize> = {
            let mut s = BTreeSet::new();
            while s.is_empty() {
                for y in 0..action.size() {
                    if rng.random_bool(0.5) {
                        s.insert(y);
                    }
                }
            }
            s
        };
        let p = restrict(action, &subset).unwrap();
        assert!(restrict_globalize_roundtrip(&p).is_ok());
        assert!(oracle_agreement(&p).is_ok());
    }
}

#[test]
fn globalization_size_bound() {
    // |Y| ≤ |G|·|X|, with equality exactly when only the unit acts
    let p = c2_point_restriction();
    let glob = globalize_quotient(&p).unwrap();
    assert_eq!(glob.size(), 2); // equality: G•X = {e}×X
    assert_eq!(p.domain().len(), p.size());

    let q = c4_two_point_restriction();
    let glob = globalize_quotient(&q).unwrap();
    assert!(glob.size() <= 4 * 2);
    assert!(glob.size() < 8, "nontrivial domain must merge classes");
}

#[test]
fn minimality_of_quotient_outputs() {
    for p in [c2_point_restriction(), c4_two_point_restriction()] {
        let glob = globalize_quotient(&p).unwrap();
        assert!(pset_minimality(&glob));
    }
}

#[test]
fn extra_fixed_point_breaks_minimality() {
    let p = c2_point_restriction();
    let glob = globalize_quotient(&p).unwrap();
    // adjoin a fixed point to the globalized carrier
    let mut carrier = glob.global.carrier().to_vec();
    carrier.push("extra".into());
    let mut action = Vec::new();
    for g in 0..glob.global.monoid().order() {
        let mut row: Vec<usize> = (0..glob.global.size()).map(|y| glob.global.act(g, y)).collect();
        row.push(glob.global.size());
        action.push(row);
    }
    let padded = GlobalGSet::new(glob.global.monoid().clone(), carrier, action).unwrap();
    assert!(padded.check().is_ok());
    let padded_glob = PSetGlobalization {
        global: padded,
        class_reps: glob.class_reps.clone(),
        class_of: glob.class_of.clone(),
        embed: glob.embed.clone(),
    };
    assert!(!pset_minimality(&padded_glob));
}

#[test]
fn monoid_without_inverses_is_rejected_for_globalization() {
    // the two-element multiplicative monoid {1, 0}
    let monoid = Arc::new(
        FiniteMonoid::new(
            vec!["1".into(), "0".into()],
            vec![vec![0, 1], vec![1, 1]],
            0,
        )
        .unwrap(),
    );
    assert!(!monoid.is_group());
    let carrier = vec!["x".into()];
    let domain = BTreeSet::from([(0, 0)]);
    let map = BTreeMap::from([((0, 0), 0)]);
    let p = PartialGSet::new(monoid, carrier, domain, map).unwrap();
    assert!(p.check().is_ok(), "monoid partial actions are accepted by the checker");
    assert!(matches!(
        globalize_quotient(&p),
        Err(PsetError::NotAGroup(_))
    ));
}

#[test]
fn embedding_is_equivariant_on_the_domain() {
    let p = c4_two_point_restriction();
    let glob = globalize_quotient(&p).unwrap();
    for &(g, x) in p.domain() {
        assert_eq!(
            glob.global.act(g, glob.embed[x]),
            glob.embed[p.alpha(g, x).unwrap()]
        );
    }
}

#[test]
fn exhaustive_small_sweep_of_symmetric3() {
    // every S3-set on at most four points, every nonempty subset
    let s3 = symmetric3();
    for action in crate::fixtures::all_actions_up_to_iso(&s3, 4) {
        assert!(action.check().is_ok());
        for subset in crate::fixtures::nonempty_subsets(action.size()) {
            let p = restrict(&action, &subset).unwrap();
            assert!(oracle_agreement(&p).is_ok());
            assert!(restrict_globalize_roundtrip(&p).is_ok());
        }
    }
}
