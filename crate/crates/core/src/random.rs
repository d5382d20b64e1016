//! Seeded random generation of comodules, epimorphisms, covers and cover
//! morphisms for the randomized law suites. Every generator takes an
//! explicit RNG; suites derive theirs from a recorded seed so any report
//! is reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use crate::comod::{colinear_map_space, free_comodule, generated_subcomodule, Coalgebra, Comodule};
use crate::exactla::{is_iso, LinearMap, Matrix, VectorSpace};
use crate::gpc::Cover;
use crate::scalar::Scalar;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse small-integer matrix: entries are zero with probability ~1/2,
/// otherwise in `-2..=2`.
pub fn random_matrix<S: Scalar>(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.random_bool(0.5) {
            S::zero()
        } else {
            S::from_int(rng.random_range(-2..=2))
        }
    })
}

/// Invertible matrix with determinant ±1: a product of unitriangular
/// factors and a permutation.
pub fn random_invertible<S: Scalar>(dim: usize, rng: &mut impl Rng) -> Matrix<S> {
    let mut lower = Matrix::identity(dim);
    let mut upper = Matrix::identity(dim);
    for i in 0..dim {
        for j in 0..i {
            if rng.random_bool(0.4) {
                lower[(i, j)] = S::from_int(rng.random_range(-2..=2));
            }
            if rng.random_bool(0.4) {
                upper[(j, i)] = S::from_int(rng.random_range(-2..=2));
            }
        }
    }
    let mut perm: Vec<usize> = (0..dim).collect();
    for i in (1..dim).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut p = Matrix::zero(dim, dim);
    for (i, &pi) in perm.iter().enumerate() {
        p[(i, pi)] = S::one();
    }
    lower.mul(&upper).mul(&p)
}

/// Surjective matrix `from -> to` (requires `to <= from`), by rejection
/// sampling with a deterministic full-rank fallback.
pub fn random_epi_matrix<S: Scalar>(from: usize, to: usize, rng: &mut impl Rng) -> Matrix<S> {
    assert!(to <= from, "an epi cannot raise the dimension");
    for _ in 0..64 {
        let candidate = random_matrix::<S>(to, from, rng);
        if candidate.rank() == to {
            return candidate;
        }
    }
    Matrix::from_fn(to, from, |r, c| if r == c { S::one() } else { S::zero() })
}

/// Transports a comodule structure along an invertible change of basis:
/// `δ' = (T⊗H) ∘ δ ∘ T⁻¹` on the same space.
pub fn conjugate_comodule<S: Scalar>(x: &Comodule<S>, t: &Matrix<S>) -> Comodule<S> {
    let space = x.space().clone();
    let map = LinearMap::new(space.clone(), space.clone(), t.clone()).expect("square matrix");
    let inv = map.inverse().expect("conjugation needs an invertible matrix");
    let id_h = LinearMap::identity(x.coalgebra().space());
    let coaction = crate::exactla::tensor_map(&map, &id_h)
        .compose(x.coaction())
        .compose(&inv)
        .with_dom(space.clone())
        .with_cod(space.tensor(x.coalgebra().space()));
    let conjugated = Comodule::new(x.coalgebra().clone(), space, coaction).expect("shapes");
    debug_assert!(conjugated.check().is_ok());
    conjugated
}

/// Random comodule of dimension in `1..=max_dim`: a subcomodule of a small
/// free comodule generated by random vectors, transported along a random
/// change of basis so the coaction matrix is not in any normal form.
pub fn random_comodule<S: Scalar>(
    coalgebra: &Arc<Coalgebra<S>>,
    max_dim: usize,
    rng: &mut impl Rng,
) -> Comodule<S> {
    assert!(max_dim >= 1);
    for _ in 0..64 {
        let v_dim = rng.random_range(1..=2);
        let free = free_comodule(&VectorSpace::generated(v_dim, "v"), coalgebra);
        let generator_count = rng.random_range(1..=2);
        let generators: Vec<Vec<S>> = (0..generator_count)
            .map(|_| {
                (0..free.dim())
                    .map(|_| {
                        if rng.random_bool(0.5) {
                            S::zero()
                        } else {
                            S::from_int(rng.random_range(-2..=2))
                        }
                    })
                    .collect()
            })
            .collect();
        if generators.iter().all(|g| g.iter().all(S::is_zero)) {
            continue;
        }
        let (sub, _) = generated_subcomodule(&free, &generators);
        if sub.dim() >= 1 && sub.dim() <= max_dim {
            let t = random_invertible(sub.dim(), rng);
            return conjugate_comodule(&sub, &t);
        }
    }
    // the defining corpus always admits a small subcomodule; as a last
    // resort take the one generated by the first free basis vector
    let free = free_comodule(&VectorSpace::generated(1, "v"), coalgebra);
    let mut seed = vec![S::zero(); free.dim()];
    seed[0] = S::one();
    let (sub, _) = generated_subcomodule(&free, &[seed]);
    assert!(sub.dim() <= max_dim, "no small enough subcomodule found");
    sub
}

/// Random cover: a random comodule with a random surjection onto a
/// strictly positive-dimensional base.
pub fn random_cover<S: Scalar>(
    coalgebra: &Arc<Coalgebra<S>>,
    max_dim: usize,
    rng: &mut impl Rng,
) -> Cover<S> {
    let y = random_comodule(coalgebra, max_dim, rng);
    let base_dim = rng.random_range(1..=y.dim());
    let base = VectorSpace::generated(base_dim, "x");
    let projection = LinearMap::new(
        y.space().clone(),
        base.clone(),
        random_epi_matrix(y.dim(), base_dim, rng),
    )
    .expect("shapes");
    Cover::new(y, base, projection).expect("full-rank projection is epi")
}

/// Random colinear automorphism: the identity plus a random element of
/// the colinear endomorphism space, retried until invertible. Terminates
/// because the identity itself is a valid draw.
pub fn random_colinear_automorphism<S: Scalar>(
    y: &Comodule<S>,
    rng: &mut impl Rng,
) -> LinearMap<S> {
    let endos = colinear_map_space(y, y);
    let identity = LinearMap::identity(y.space());
    for _ in 0..32 {
        let mut m = Matrix::identity(y.dim());
        for basis in &endos {
            let c = S::from_int(rng.random_range(-1..=1));
            if c.is_zero() {
                continue;
            }
            for i in 0..y.dim() {
                for j in 0..y.dim() {
                    if !basis[(i, j)].is_zero() {
                        m[(i, j)] += c.clone() * &basis[(i, j)];
                    }
                }
            }
        }
        let candidate = LinearMap::new(y.space().clone(), y.space().clone(), m).expect("square");
        if is_iso(&candidate) {
            return candidate;
        }
    }
    identity
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    #[test]
    fn random_comodules_satisfy_the_laws() {
        let mut rng = rng_from_seed(7);
        for (name, coalgebra) in fixtures::fixture_coalgebras::<Rational>() {
            for _ in 0..10 {
                let x = random_comodule(&coalgebra, 6, &mut rng);
                assert!(x.check().is_ok(), "random comodule over {name} breaks laws");
                assert!(x.dim() >= 1 && x.dim() <= 6);
            }
        }
    }

    #[test]
    fn random_epi_is_epi() {
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            let m: Matrix<Rational> = random_epi_matrix(5, 3, &mut rng);
            assert_eq!(m.rank(), 3);
        }
    }

    #[test]
    fn random_automorphism_is_colinear_and_invertible() {
        let mut rng = rng_from_seed(13);
        let y = fixtures::graded_comodule::<Rational>(&fixtures::qc2(), &["a1", "a2", "b1"], &[0, 0, 1]);
        for _ in 0..5 {
            let t = random_colinear_automorphism(&y, &mut rng);
            assert!(is_iso(&t));
            assert!(crate::comod::is_colinear(&t, &y, &y));
        }
    }
}
