mod common;

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sullivan_core::homlin::restriction_functional;
use sullivan_core::random::two_stage;
use sullivan_core::{gottlieb, homology, rat, top_degree_law, DerBasisElement, DerComplex, Monomial};

fn ranks(pairs: &[(u32, usize)]) -> BTreeMap<u32, usize> {
    pairs.iter().copied().collect()
}

#[test]
fn example_2_3_ranks() {
    let h = homology(&common::example_2_3()).unwrap();
    assert_eq!(h.ranks(), ranks(&[(4, 1), (7, 1)]));
    assert_eq!(h.baut_ranks(), ranks(&[(5, 1), (8, 1)]));
    assert_eq!(top_degree_law(&common::example_2_3()).unwrap(), (8, 1));
}

#[test]
fn theorem_3_1_grid() {
    for r in 2..=6u32 {
        for m in 0..=3u32 {
            let h = homology(&common::x_rm(r, m)).unwrap();
            let mut expected = BTreeMap::new();
            *expected.entry(r - 1).or_insert(0) += 1;
            *expected.entry(4 * m + r).or_insert(0) += 1;
            assert_eq!(h.ranks(), expected, "X_{{{r},{m}}}");
        }
    }
}

#[test]
fn theorem_3_2_ranks() {
    for n in [1u32, 3, 5] {
        let h = homology(&common::theorem_3_2(n)).unwrap();
        assert_eq!(h.ranks(), ranks(&[(2 * n, 1), (4 * n, 1)]), "n = {n}");
    }
}

#[test]
fn theorem_4_1_r1_is_s5() {
    let h = homology(&common::theorem_4_1_r1()).unwrap();
    assert_eq!(h.baut_ranks(), ranks(&[(5, 1)]));
}

#[test]
fn theorem_4_5_top_degree() {
    assert_eq!(top_degree_law(&common::model_y()).unwrap(), (6, 1));
}

#[test]
fn example_2_4_degree_two_is_injective() {
    let c = DerComplex::new(&common::example_2_4()).unwrap();
    let d2 = c.matrix_of_d(2).unwrap();
    assert_eq!((d2.rows(), d2.cols()), (2, 2));
    assert_eq!(sullivan_core::homlin::rank(&d2), 2);
}

#[test]
fn top_degree_law_on_random_models() {
    for seed in 0..200 {
        let m = two_stage(seed);
        let (n, r) = m.top_stage();
        let h = homology(&m).unwrap();
        assert_eq!(h.dim(n), r, "seed {seed}");
        assert_eq!(top_degree_law(&m).unwrap(), (n + 1, r));
        // Der vanishes above N, so nothing survives there
        let c = DerComplex::new(&m).unwrap();
        assert_eq!(c.dim(n + 1), 0);
        assert!(h.ranks().keys().all(|&k| k <= n));
    }
}

#[test]
fn restriction_kills_boundaries() {
    let mut models = common::all_valid();
    models.extend((0..50).map(|s| (format!("seed {s}"), two_stage(s))));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, m) in models {
        let c = DerComplex::new(&m).unwrap();
        for n in 2..=c.top_degree() {
            let coords: Vec<_> = (0..c.dim(n)).map(|_| rat(rng.gen_range(-3..=3))).collect();
            let boundary = c.differential(&c.derivation(n, &coords));
            let f = restriction_functional(&m, &boundary);
            assert!(f.iter().all(|(_, x)| x.is_zero()), "{name}: degree {n}");
        }
    }
}

#[test]
fn gottlieb_of_free_algebras() {
    for n in 1..=3 {
        assert_eq!(gottlieb(&common::free_odd(n)).unwrap().ranks(), ranks(&[(2 * n + 1, 1)]));
    }
    assert_eq!(gottlieb(&common::free_even(2)).unwrap().ranks(), ranks(&[(2, 1)]));
}

#[test]
fn gottlieb_of_example_2_3() {
    let m = common::example_2_3();
    let h = homology(&m).unwrap();
    let reps = &h.get(7).unwrap().representatives;
    assert_eq!(reps.len(), 1);
    // the class is detected by its w* coordinate, so it restricts nontrivially to V^7
    let w_star = DerBasisElement {
        source: m.generators().id("w").unwrap(),
        target: Monomial::one(),
    };
    assert!(!reps[0].coefficient(&w_star).is_zero());
    assert!(restriction_functional(&m, &reps[0]).iter().any(|(_, x)| !x.is_zero()));
    assert!(h.get(4).unwrap().representatives.iter().all(|r| restriction_functional(&m, r).is_empty()));
    assert_eq!(gottlieb(&m).unwrap().ranks(), ranks(&[(7, 1)]));
}
