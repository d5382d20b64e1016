//! Property tests for the exact linear backend and the set backend:
//! the algebraic identities that must hold on arbitrary inputs, not just
//! the curated examples.

use std::collections::BTreeSet;

use proptest::prelude::*;

use globengine_core::exactla::{
    equalizer, factor_through_epi, is_epi, kernel, pushout, tensor_map, LinearMap, Matrix,
    VectorSpace,
};
use globengine_core::psets;
use globengine_core::scalar::Scalar;
use globengine_core::{fixtures, Rational};

type M = Matrix<Rational>;
type Map = LinearMap<Rational>;

fn rational(n: i64) -> Rational {
    Rational::from_int(n)
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = M> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |entries| {
        M::from_fn(rows, cols, |r, c| rational(entries[r * cols + c]))
    })
}

fn map_strategy(dom: usize, cod: usize) -> impl Strategy<Value = Map> {
    matrix_strategy(cod, dom).prop_map(move |m| {
        Map::new(
            VectorSpace::generated(dom, "a"),
            VectorSpace::generated(cod, "b"),
            m,
        )
        .expect("shapes by construction")
    })
}

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (0usize..=4, 0usize..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity((dom, cod) in dims(), seed in any::<u64>()) {
        let f = map_from_seed(dom, cod, seed);
        let k = kernel(&f);
        prop_assert_eq!(k.dom().dim() + f.rank(), dom);
        prop_assert!(f.compose(&k).matrix().is_zero());
    }

    #[test]
    fn pushout_legs_are_jointly_epi_and_universal(
        a in 0usize..=3, b in 1usize..=3, c in 1usize..=3,
        seed in any::<u64>(), wseed in any::<u64>()
    ) {
        let f = map_from_seed(a, b, seed);
        let g = map_from_seed(a, c, seed.wrapping_add(1));
        let po = pushout(&f, &g).unwrap();
        // dimension formula against the stacked kernel
        let stacked = f.matrix().vstack(&g.matrix().neg());
        let shared = a - stacked.rank();
        prop_assert_eq!(po.apex.dim(), b + c - (a - shared));
        // jointly epi
        let block = po.left.matrix().hstack(po.right.matrix());
        prop_assert_eq!(block.rank(), po.apex.dim());
        // legs agree on the span
        let via_left = po.left.compose(&f);
        let via_right = po.right.compose(&g);
        prop_assert_eq!(via_left.matrix(), via_right.matrix());
        // universal property: every cocone factors uniquely; cocones all
        // arise from maps out of the apex
        let w = map_from_seed(po.apex.dim(), 2, wseed);
        let u = w.compose(&po.left);
        let v = w.compose(&po.right);
        let mediated = po.factor(&u, &v).unwrap().expect("cocones factor");
        prop_assert_eq!(mediated.matrix(), w.matrix());
    }

    #[test]
    fn equalizer_equalizes((dom, cod) in dims(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = map_from_seed(dom, cod, s1);
        let g = map_from_seed(dom, cod, s2);
        let e = equalizer(&f, &g).unwrap();
        let through_f = f.compose(&e);
        let through_g = g.compose(&e);
        prop_assert_eq!(through_f.matrix(), through_g.matrix());
        // and it is the largest such subspace
        prop_assert_eq!(e.dom().dim(), dom - f.sub(&g).rank());
    }

    #[test]
    fn epi_factorization_is_exact((dom, cod) in dims(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let e = map_from_seed(dom, cod, s1);
        prop_assume!(is_epi(&e));
        let h = map_from_seed(dom, 2, s2);
        match factor_through_epi(&h, &e).unwrap() {
            Some(u) => {
                let recomposed = u.compose(&e);
                prop_assert_eq!(recomposed.matrix(), h.matrix());
            }
            None => {
                // refusal must be witnessed by a kernel vector of e that h
                // does not kill
                let k = kernel(&e);
                let survives = !h.compose(&k).matrix().is_zero();
                prop_assert!(survives);
            }
        }
    }

    #[test]
    fn tensor_map_is_functorial(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), s4 in any::<u64>()) {
        let f = map_from_seed(2, 2, s1);
        let f2 = map_from_seed(2, 2, s2);
        let g = map_from_seed(2, 2, s3);
        let g2 = map_from_seed(2, 2, s4);
        let lhs = tensor_map(&f, &g).compose(&tensor_map(&f2, &g2));
        let rhs = tensor_map(&f.compose(&f2), &g.compose(&g2));
        prop_assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn restrictions_globalize_within_the_size_bound(
        group_index in 0usize..8,
        action_seed in any::<u64>(),
        subset_seed in any::<u64>(),
    ) {
        let (_, group) = fixtures::groups_up_to_order_six().swap_remove(group_index);
        let actions = fixtures::all_actions_up_to_iso(&group, 4);
        let action = &actions[(action_seed as usize) % actions.len()];
        let size = action.size();
        let mut subset = BTreeSet::new();
        let mut bits = subset_seed;
        for y in 0..size {
            if bits & 1 == 1 {
                subset.insert(y);
            }
            bits >>= 1;
        }
        if subset.is_empty() {
            subset.insert((subset_seed as usize) % size);
        }
        let p = psets::restrict(action, &subset).unwrap();
        prop_assert!(p.check().is_ok());
        let glob = psets::globalize_quotient(&p).unwrap();
        // |Y| ≤ |G|·|X|, with equality exactly when only the unit acts
        prop_assert!(glob.size() <= group.order() * p.size());
        let only_unit = p.domain().len() == p.size();
        prop_assert_eq!(glob.size() == group.order() * p.size(), only_unit);
        // embedding is injective and partially equivariant
        let distinct: BTreeSet<usize> = glob.embed.iter().copied().collect();
        prop_assert_eq!(distinct.len(), p.size());
        for &(g, x) in p.domain() {
            prop_assert_eq!(
                glob.global.act(g, glob.embed[x]),
                glob.embed[p.alpha(g, x).unwrap()]
            );
        }
        prop_assert!(psets::pset_minimality(&glob));
    }
}

/// Deterministic map from a seed, so shrinking stays meaningful while the
/// entries cover a mix of sparsity and small magnitudes.
fn map_from_seed(dom: usize, cod: usize, seed: u64) -> Map {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let m = M::from_fn(cod, dom, |_, _| {
        let v = next();
        if v % 2 == 0 {
            rational(0)
        } else {
            rational(((v >> 8) % 7) as i64 - 3)
        }
    });
    Map::new(
        VectorSpace::generated(dom, "a"),
        VectorSpace::generated(cod, "b"),
        m,
    )
    .expect("shapes by construction")
}
