//! The in-repo fixture corpus, constructed programmatically: group-like
//! coalgebras of small cyclic groups, the two-dimensional `g, x` coalgebra,
//! the dual of the 2x2 matrix algebra, graded and nilpotent comodules, and
//! the small finite groups with their reference actions.
//!
//! The JSON files under `fixtures/` are serialized from these constructors
//! (see the `gen_fixtures` example) and a test keeps the two in sync.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::comod::{free_comodule, Coalgebra, Comodule};
use crate::exactla::{LinearMap, Matrix, VectorSpace};
use crate::psets::{FiniteMonoid, GlobalGSet, PartialGSet};
use crate::scalar::Scalar;

/// Group-like coalgebra on the given basis labels: `Δ x = x ⊗ x`,
/// `ε x = 1` for every basis vector.
pub fn group_like<S: Scalar>(labels: &[&str]) -> Arc<Coalgebra<S>> {
    let n = labels.len();
    let space = VectorSpace::new(labels.iter().map(|s| s.to_string()).collect()).expect("labels");
    let mut delta = Matrix::zero(n * n, n);
    for i in 0..n {
        delta[(i * n + i, i)] = S::one();
    }
    let mut eps = Matrix::zero(1, n);
    for i in 0..n {
        eps[(0, i)] = S::one();
    }
    let comult = LinearMap::new(space.clone(), space.tensor(&space), delta).expect("delta shape");
    let counit = LinearMap::new(space.clone(), VectorSpace::line(), eps).expect("eps shape");
    let coalgebra = Coalgebra::new(space, comult, counit).expect("coalgebra shapes");
    debug_assert!(coalgebra.check().is_ok());
    Arc::new(coalgebra)
}

/// `ℚC2` as a group-like coalgebra on `{a, b}`.
pub fn qc2<S: Scalar>() -> Arc<Coalgebra<S>> {
    group_like(&["a", "b"])
}

/// `ℚC3` as a group-like coalgebra on `{e, g, g2}`.
pub fn qc3<S: Scalar>() -> Arc<Coalgebra<S>> {
    group_like(&["e", "g", "g2"])
}

/// The two-dimensional coalgebra on `{g, x}` with `Δg = g⊗g`,
/// `Δx = g⊗x + x⊗g`, `ε(g) = 1`, `ε(x) = 0`.
pub fn gx_coalgebra<S: Scalar>() -> Arc<Coalgebra<S>> {
    let space = VectorSpace::new(vec!["g".into(), "x".into()]).expect("labels");
    // rows: g⊗g, g⊗x, x⊗g, x⊗x; cols: g, x
    let delta = Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[0, 1], &[0, 0]]);
    let eps = Matrix::from_int_rows(&[&[1, 0]]);
    let comult = LinearMap::new(space.clone(), space.tensor(&space), delta).expect("delta shape");
    let counit = LinearMap::new(space.clone(), VectorSpace::line(), eps).expect("eps shape");
    let coalgebra = Coalgebra::new(space, comult, counit).expect("coalgebra shapes");
    debug_assert!(coalgebra.check().is_ok());
    Arc::new(coalgebra)
}

/// Dual of the `n x n` matrix algebra: basis `e_ij` with
/// `Δ(e_ij) = Σ_k e_ik ⊗ e_kj` and `ε(e_ij) = δ_ij`.
pub fn matrix_dual<S: Scalar>(n: usize) -> Arc<Coalgebra<S>> {
    let labels: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
        .collect();
    let space = VectorSpace::new(labels).expect("labels");
    let dim = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut delta = Matrix::zero(dim * dim, dim);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                delta[(idx(i, k) * dim + idx(k, j), idx(i, j))] = S::one();
            }
        }
    }
    let mut eps = Matrix::zero(1, dim);
    for i in 0..n {
        eps[(0, idx(i, i))] = S::one();
    }
    let comult = LinearMap::new(space.clone(), space.tensor(&space), delta).expect("delta shape");
    let counit = LinearMap::new(space.clone(), VectorSpace::line(), eps).expect("eps shape");
    let coalgebra = Coalgebra::new(space, comult, counit).expect("coalgebra shapes");
    debug_assert!(coalgebra.check().is_ok());
    Arc::new(coalgebra)
}

/// All fixture coalgebras, with their workspace names.
pub fn fixture_coalgebras<S: Scalar>() -> Vec<(&'static str, Arc<Coalgebra<S>>)> {
    vec![
        ("QC2", qc2()),
        ("QC3", qc3()),
        ("GX", gx_coalgebra()),
        ("M2DUAL", matrix_dual(2)),
    ]
}

/// Graded comodule over a group-like coalgebra: basis vector `i` has
/// degree `degrees[i]`, i.e. `δ(y_i) = y_i ⊗ h_{degrees[i]}`.
pub fn graded_comodule<S: Scalar>(
    coalgebra: &Arc<Coalgebra<S>>,
    labels: &[&str],
    degrees: &[usize],
) -> Comodule<S> {
    assert_eq!(labels.len(), degrees.len());
    let n = labels.len();
    let h = coalgebra.dim();
    let space = VectorSpace::new(labels.iter().map(|s| s.to_string()).collect()).expect("labels");
    let mut m = Matrix::zero(n * h, n);
    for (i, &d) in degrees.iter().enumerate() {
        m[(i * h + d, i)] = S::one();
    }
    let coaction = LinearMap::new(space.clone(), space.tensor(coalgebra.space()), m).expect("shape");
    let comodule = Comodule::new(coalgebra.clone(), space, coaction).expect("shapes");
    debug_assert!(comodule.check().is_ok());
    comodule
}

/// The coalgebra as a comodule over itself, via its comultiplication.
pub fn regular_comodule<S: Scalar>(coalgebra: &Arc<Coalgebra<S>>) -> Comodule<S> {
    let space = coalgebra.space().clone();
    let coaction = coalgebra
        .comult()
        .clone()
        .with_cod(space.tensor(coalgebra.space()));
    let comodule = Comodule::new(coalgebra.clone(), space, coaction).expect("shapes");
    debug_assert!(comodule.check().is_ok());
    comodule
}

/// Two-dimensional comodule over the `g, x` coalgebra determined by the
/// square-zero operator sending `v2 -> v1`:
/// `δ(v1) = v1⊗g`, `δ(v2) = v2⊗g + v1⊗x`.
pub fn nilpotent_gx_comodule<S: Scalar>() -> Comodule<S> {
    let coalgebra = gx_coalgebra();
    let space = VectorSpace::new(vec!["v1".into(), "v2".into()]).expect("labels");
    // rows: v1⊗g, v1⊗x, v2⊗g, v2⊗x
    let m = Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[0, 1], &[0, 0]]);
    let coaction = LinearMap::new(space.clone(), space.tensor(coalgebra.space()), m).expect("shape");
    let comodule = Comodule::new(coalgebra, space, coaction).expect("shapes");
    debug_assert!(comodule.check().is_ok());
    comodule
}

/// The defining two-dimensional comodule over the dual matrix coalgebra:
/// `δ(v_i) = Σ_j v_j ⊗ e_ji`.
pub fn standard_m2_comodule<S: Scalar>() -> Comodule<S> {
    let coalgebra = matrix_dual(2);
    let space = VectorSpace::new(vec!["v1".into(), "v2".into()]).expect("labels");
    let h = coalgebra.dim();
    let idx = |i: usize, j: usize| i * 2 + j;
    let mut m = Matrix::zero(2 * h, 2);
    for i in 0..2 {
        for j in 0..2 {
            // δ(v_i) = Σ_j v_j ⊗ e_{j i}
            m[(j * h + idx(j, i), i)] = S::one();
        }
    }
    let coaction = LinearMap::new(space.clone(), space.tensor(coalgebra.space()), m).expect("shape");
    let comodule = Comodule::new(coalgebra, space, coaction).expect("shapes");
    debug_assert!(comodule.check().is_ok());
    comodule
}

/// Named fixture comodules used across the test suites.
pub fn fixture_comodules<S: Scalar>() -> Vec<(&'static str, Comodule<S>)> {
    let qc2 = qc2::<S>();
    let qc3 = qc3::<S>();
    vec![
        ("graded2", graded_comodule(&qc2, &["y_a", "y_b"], &[0, 1])),
        ("graded3", graded_comodule(&qc2, &["y_a", "y_b", "z_b"], &[0, 1, 1])),
        ("graded2x2", graded_comodule(&qc2, &["y_a", "y_b", "w_a", "w_b"], &[0, 1, 0, 1])),
        ("regular_qc2", regular_comodule(&qc2)),
        ("regular_qc3", regular_comodule(&qc3)),
        ("free2_qc2", free_comodule(&VectorSpace::new(vec!["u1".into(), "u2".into()]).unwrap(), &qc2)),
        ("nilpotent_gx", nilpotent_gx_comodule()),
        ("std_m2", standard_m2_comodule()),
    ]
}

/// Cyclic group of order `n`, elements labelled by exponent.
pub fn cyclic_group(n: usize) -> Arc<FiniteMonoid> {
    let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    Arc::new(FiniteMonoid::new(elements, table, 0).expect("cyclic group"))
}

/// Klein four-group as `C2 x C2`.
pub fn klein_four() -> Arc<FiniteMonoid> {
    let elements = vec!["e".into(), "a".into(), "b".into(), "ab".into()];
    let xor = |i: usize, j: usize| i ^ j;
    let table: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| xor(i, j)).collect()).collect();
    Arc::new(FiniteMonoid::new(elements, table, 0).expect("klein four"))
}

/// Symmetric group on three letters, as permutations of `{0, 1, 2}`.
pub fn symmetric3() -> Arc<FiniteMonoid> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
    ];
    let labels = vec!["e", "r", "r2", "s01", "s12", "s02"];
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).expect("closed");
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| perms.iter().map(|q| index_of(&compose(p, q))).collect())
        .collect();
    Arc::new(
        FiniteMonoid::new(labels.into_iter().map(String::from).collect(), table, 0)
            .expect("symmetric group"),
    )
}

/// Dihedral group of order `2n` (`r^n = s^2 = e`, `s r s = r⁻¹`).
pub fn dihedral(n: usize) -> Arc<FiniteMonoid> {
    let order = 2 * n;
    let elements: Vec<String> = (0..n)
        .map(|i| format!("r{i}"))
        .chain((0..n).map(|i| format!("sr{i}")))
        .collect();
    // element i < n is r^i; element n + i is s·r^i
    let mul = |a: usize, b: usize| -> usize {
        let (flip_a, i) = (a >= n, a % n);
        let (flip_b, j) = (b >= n, b % n);
        // (s^x r^i)(s^y r^j) = s^(x+y) r^(±i + j)
        let exponent = if flip_b { (n - i % n) % n + j } else { i + j } % n;
        let flip = flip_a ^ flip_b;
        if flip {
            n + exponent
        } else {
            exponent
        }
    };
    let table: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
    Arc::new(FiniteMonoid::new(elements, table, 0).expect("dihedral group"))
}

/// Every group of order at most six, up to isomorphism.
pub fn groups_up_to_order_six() -> Vec<(&'static str, Arc<FiniteMonoid>)> {
    vec![
        ("C1", cyclic_group(1)),
        ("C2", cyclic_group(2)),
        ("C3", cyclic_group(3)),
        ("C4", cyclic_group(4)),
        ("V4", klein_four()),
        ("C5", cyclic_group(5)),
        ("C6", cyclic_group(6)),
        ("S3", symmetric3()),
    ]
}

/// The swap action of `C2` on two points.
pub fn c2_swap() -> GlobalGSet {
    let c2 = cyclic_group(2);
    GlobalGSet::new(c2, vec!["1".into(), "2".into()], vec![vec![0, 1], vec![1, 0]])
        .expect("swap action")
}

/// `C4` acting on itself by translation.
pub fn c4_translation() -> GlobalGSet {
    let c4 = cyclic_group(4);
    let action: Vec<Vec<usize>> = (0..4).map(|g| (0..4).map(|x| (g + x) % 4).collect()).collect();
    GlobalGSet::new(
        c4,
        (0..4).map(|i| i.to_string()).collect(),
        action,
    )
    .expect("translation action")
}

/// The swap action restricted to the fixed point set `{1}`.
pub fn c2_point_restriction() -> PartialGSet {
    crate::psets::restrict(&c2_swap(), &BTreeSet::from([0])).expect("restriction")
}

/// `C4` translation restricted to `{0, 1}`.
pub fn c4_two_point_restriction() -> PartialGSet {
    crate::psets::restrict(&c4_translation(), &BTreeSet::from([0, 1])).expect("restriction")
}

/// Enumerates all subgroups of a small group by brute force.
pub fn subgroups(group: &Arc<FiniteMonoid>) -> Vec<BTreeSet<usize>> {
    let n = group.order();
    assert!(n <= 16, "brute-force subgroup enumeration is for small groups");
    let mut found: Vec<BTreeSet<usize>> = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << group.unit()) == 0 {
            continue;
        }
        let subset: BTreeSet<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let closed = subset.iter().all(|&g| {
            subset.iter().all(|&h| subset.contains(&group.mul(g, h)))
                && group.inv(g).map(|gi| subset.contains(&gi)).unwrap_or(false)
        });
        if closed {
            found.push(subset);
        }
    }
    found
}

/// The transitive action of a group on the left cosets of a subgroup.
pub fn coset_action(group: &Arc<FiniteMonoid>, subgroup: &BTreeSet<usize>) -> GlobalGSet {
    let cosets: Vec<BTreeSet<usize>> = {
        let mut seen: Vec<BTreeSet<usize>> = Vec::new();
        for g in 0..group.order() {
            let coset: BTreeSet<usize> = subgroup.iter().map(|&h| group.mul(g, h)).collect();
            if !seen.contains(&coset) {
                seen.push(coset);
            }
        }
        seen
    };
    let labels: Vec<String> = cosets
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(|&g| group.label(g)).collect::<Vec<_>>().join(",")))
        .collect();
    let action: Vec<Vec<usize>> = (0..group.order())
        .map(|g| {
            cosets
                .iter()
                .map(|coset| {
                    let image: BTreeSet<usize> = coset.iter().map(|&h| group.mul(g, h)).collect();
                    cosets.iter().position(|c| *c == image).expect("cosets are permuted")
                })
                .collect()
        })
        .collect();
    let gset = GlobalGSet::new(group.clone(), labels, action).expect("coset action");
    debug_assert!(gset.check().is_ok());
    gset
}

/// Disjoint union of global actions of the same group.
pub fn disjoint_union(parts: &[GlobalGSet]) -> GlobalGSet {
    assert!(!parts.is_empty());
    let monoid = parts[0].monoid().clone();
    let mut labels = Vec::new();
    let mut offsets = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        offsets.push(labels.len());
        labels.extend(part.carrier().iter().map(|l| format!("{i}.{l}")));
    }
    let total = labels.len();
    let action: Vec<Vec<usize>> = (0..monoid.order())
        .map(|g| {
            let mut row = Vec::with_capacity(total);
            for (i, part) in parts.iter().enumerate() {
                for y in 0..part.size() {
                    row.push(offsets[i] + part.act(g, y));
                }
            }
            row
        })
        .collect();
    GlobalGSet::new(monoid, labels, action).expect("disjoint union")
}

/// All G-set structures on carriers of size up to `max_size`, one per
/// isomorphism class: multisets of coset actions on conjugacy classes of
/// subgroups, glued by disjoint union.
pub fn all_actions_up_to_iso(group: &Arc<FiniteMonoid>, max_size: usize) -> Vec<GlobalGSet> {
    let all_subgroups = subgroups(group);
    // deduplicate by conjugacy: conjugate subgroups give isomorphic coset actions
    let mut representatives: Vec<BTreeSet<usize>> = Vec::new();
    for sub in &all_subgroups {
        let conjugate_of_known = representatives.iter().any(|known| {
            (0..group.order()).any(|g| {
                let gi = group.inv(g).expect("group");
                let conj: BTreeSet<usize> =
                    known.iter().map(|&h| group.mul(group.mul(g, h), gi)).collect();
                conj == *sub
            })
        });
        if !conjugate_of_known {
            representatives.push(sub.clone());
        }
    }
    let mut transitive: Vec<(usize, GlobalGSet)> = representatives
        .iter()
        .map(|sub| {
            let action = coset_action(group, sub);
            (action.size(), action)
        })
        .filter(|(size, _)| *size <= max_size)
        .collect();
    transitive.sort_by_key(|(size, _)| *size);

    // multisets of transitive pieces with total size <= max_size
    let mut actions = Vec::new();
    let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(0, 0, Vec::new())];
    while let Some((start, used, chosen)) = stack.pop() {
        if !chosen.is_empty() {
            let parts: Vec<GlobalGSet> = chosen.iter().map(|&i| transitive[i].1.clone()).collect();
            actions.push(disjoint_union(&parts));
        }
        for i in start..transitive.len() {
            let size = transitive[i].0;
            if used + size <= max_size {
                let mut next = chosen.clone();
                next.push(i);
                stack.push((i, used + size, next));
            }
        }
    }
    actions
}

/// Nonempty subsets of `0..n`, for exhaustive restriction sweeps.
pub fn nonempty_subsets(n: usize) -> Vec<BTreeSet<usize>> {
    assert!(n < 16);
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

/// Workspace name map for the set-side fixtures.
pub fn fixture_groups() -> Vec<(&'static str, Arc<FiniteMonoid>)> {
    groups_up_to_order_six()
}

pub fn fixture_actions() -> Vec<(&'static str, GlobalGSet)> {
    vec![("C2_swap", c2_swap()), ("C4_translation", c4_translation())]
}

pub fn fixture_partial_actions() -> Vec<(&'static str, PartialGSet)> {
    vec![
        ("C2_pt", c2_point_restriction()),
        ("C4_X01", c4_two_point_restriction()),
    ]
}

/// Sorted-map view used by the serialization layer and the CLI.
pub fn as_named<T>(items: Vec<(&'static str, T)>) -> BTreeMap<String, T> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
