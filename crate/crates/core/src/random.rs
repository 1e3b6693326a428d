//! Seeded random minimal models for property tests and benchmarks.
//!
//! Arbitrary random differentials almost never square to zero, so the
//! families here are built in stages where `d² = 0` holds by construction.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gca::{rat, GenId, GeneratorSet, Monomial, Polynomial, Rational};
use crate::homlin::{kernel_basis, RationalMatrix};
use crate::model::MinimalModel;

/// Shape of a two-stage model `V = V_a ⊕ V_b` with `d(V_a) = 0` and
/// `d(V_b) ⊆ Λ²V_a`.
#[derive(Clone, Debug)]
pub struct TwoStage {
    pub closed: (usize, usize),
    pub stage: (usize, usize),
    pub closed_degrees: (u32, u32),
    pub max_terms: usize,
    pub max_coefficient: i64,
}

impl Default for TwoStage {
    fn default() -> Self {
        TwoStage {
            closed: (1, 3),
            stage: (1, 2),
            closed_degrees: (2, 4),
            max_terms: 3,
            max_coefficient: 3,
        }
    }
}

fn coefficient(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    let c = rng.gen_range(1..=max);
    rat(if rng.gen_bool(0.5) { c } else { -c })
}

/// Random combination of distinct monomials with nonzero coefficients.
fn combination(rng: &mut ChaCha8Rng, pool: &[Monomial], max_terms: usize, max_coefficient: i64) -> Polynomial {
    let k = rng.gen_range(1..=max_terms.min(pool.len()));
    let mut p = Polynomial::zero();
    for m in pool.choose_multiple(rng, k) {
        p.add_term(m.clone(), coefficient(rng, max_coefficient));
    }
    p
}

/// Monomials of word length two in the given generators, grouped by degree.
fn quadratic_pool(gens: &GeneratorSet, ids: &[GenId]) -> BTreeMap<u32, Vec<Monomial>> {
    let mut out: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for (i, a) in ids.iter().enumerate() {
        for b in &ids[i..] {
            let term = &Polynomial::generator(gens.generator(*a)) * &Polynomial::generator(gens.generator(*b));
            let first = term.monomials().next().cloned();
            if let Some(m) = first {
                out.entry(m.degree()).or_default().push(m);
            }
        }
    }
    out
}

pub fn two_stage(seed: u64) -> MinimalModel {
    two_stage_with(&TwoStage::default(), seed)
}

pub fn two_stage_with(shape: &TwoStage, seed: u64) -> MinimalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = GeneratorSet::default();
    let mut closed = Vec::new();
    for i in 0..rng.gen_range(shape.closed.0..=shape.closed.1) {
        let deg = rng.gen_range(shape.closed_degrees.0..=shape.closed_degrees.1);
        closed.push(gens.push(&format!("a{}", i + 1), deg).expect("fresh name"));
    }
    let pool = quadratic_pool(&gens, &closed);
    let degrees: Vec<u32> = pool.keys().copied().collect();
    let mut diff = BTreeMap::new();
    if !degrees.is_empty() {
        for i in 0..rng.gen_range(shape.stage.0..=shape.stage.1) {
            let target = *degrees.choose(&mut rng).expect("nonempty");
            let p = combination(&mut rng, &pool[&target], shape.max_terms, shape.max_coefficient);
            let id = gens.push(&format!("b{}", i + 1), target - 1).expect("fresh name");
            diff.insert(id, p);
        }
    }
    MinimalModel::new(gens, diff).expect("generated model is well-formed")
}

/// A model with generators in degrees 2, 3 and 4 only: `a_i` closed in degree
/// 2, `b_j` in degree 3 with `d(b_j) ∈ Λ²(a)`, and `c_k` in degree 4 whose
/// differential is a random cycle in the span of the products `a_i b_j`.
pub fn three_stage_234(seed: u64) -> MinimalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = GeneratorSet::default();
    let a: Vec<GenId> = (0..rng.gen_range(1..=3))
        .map(|i| gens.push(&format!("a{}", i + 1), 2).expect("fresh name"))
        .collect();
    let pool = quadratic_pool(&gens, &a);
    let mut diff = BTreeMap::new();
    let mut b = Vec::new();
    for j in 0..rng.gen_range(1..=2) {
        let p = combination(&mut rng, &pool[&4], 3, 3);
        let id = gens.push(&format!("b{}", j + 1), 3).expect("fresh name");
        diff.insert(id, p);
        b.push(id);
    }
    let c_count = rng.gen_range(1..=2);
    let c: Vec<GenId> = (0..c_count)
        .map(|k| gens.push(&format!("c{}", k + 1), 4).expect("fresh name"))
        .collect();

    let partial = MinimalModel::new(gens.clone(), diff.clone()).expect("well-formed");
    let products: Vec<Polynomial> = a
        .iter()
        .flat_map(|ai| b.iter().map(move |bj| (*ai, *bj)))
        .map(|(ai, bj)| &Polynomial::generator(gens.generator(ai)) * &Polynomial::generator(gens.generator(bj)))
        .collect();
    let target = gens.basis_of_degree(6);
    let columns: Vec<Vec<Rational>> = products
        .iter()
        .map(|p| {
            let dp = partial.apply_d(p);
            target.iter().map(|m| dp.coefficient(m)).collect()
        })
        .collect();
    let cycles = kernel_basis(&RationalMatrix::from_columns(target.len(), &columns));
    for ck in c {
        let mut p = Polynomial::zero();
        for v in &cycles {
            let s = rat(rng.gen_range(-2..=2));
            for (x, prod) in v.iter().zip(&products) {
                p += &prod.scale(&(x * &s));
            }
        }
        diff.insert(ck, p);
    }
    MinimalModel::new(gens, diff).expect("generated model is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..40 {
            let m = two_stage(seed);
            assert!(m.is_valid(), "seed {seed}: {}", m.validate());
            assert_eq!(m, two_stage(seed));
            let t = three_stage_234(seed);
            assert!(t.is_valid(), "seed {seed}: {}", t.validate());
            assert!(t.generators().iter().all(|g| (2..=4).contains(&g.degree)));
        }
    }

    #[test]
    fn three_stage_family_has_nonzero_top_differentials() {
        let nontrivial = (0..40)
            .map(three_stage_234)
            .filter(|m| m.generators().iter().any(|g| g.degree == 4 && !m.d(g.id).is_zero()))
            .count();
        assert!(nontrivial > 0);
    }
}
