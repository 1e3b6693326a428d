mod common;

use proptest::prelude::*;
use sullivan_core::{rat, GeneratorSet, Normalized, Polynomial};

fn mixed() -> GeneratorSet {
    GeneratorSet::new([("a", 2), ("b", 2), ("x", 3), ("y", 3), ("t", 4), ("z", 5)]).unwrap()
}

fn homogeneous(gens: &GeneratorSet, n: u32, coeffs: &[i64]) -> Polynomial {
    let mut p = Polynomial::zero();
    for (m, c) in gens.basis_of_degree(n).into_iter().zip(coeffs.iter().cycle()) {
        p.add_term(m, rat(*c));
    }
    p
}

fn poly_strategy() -> impl Strategy<Value = (u32, Vec<i64>)> {
    (0u32..=9, prop::collection::vec(-2i64..=2, 1..8))
}

/// Coefficients of Π_even 1/(1 - t^d) · Π_odd (1 + t^d) up to degree `max`.
fn hilbert_series(degrees: &[u32], max: usize) -> Vec<u64> {
    let mut series = vec![0u64; max + 1];
    series[0] = 1;
    for &d in degrees {
        let d = d as usize;
        if d % 2 == 1 {
            for n in (d..=max).rev() {
                series[n] += series[n - d];
            }
        } else {
            for n in d..=max {
                series[n] += series[n - d];
            }
        }
    }
    series
}

proptest! {
    #[test]
    fn graded_commutativity((n, c1) in poly_strategy(), (k, c2) in poly_strategy()) {
        let g = mixed();
        let p = homogeneous(&g, n, &c1);
        let q = homogeneous(&g, k, &c2);
        let sign = if n % 2 == 1 && k % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(g.multiply(&p, &q).unwrap(), g.multiply(&q, &p).unwrap().scale(&rat(sign)));
    }

    #[test]
    fn associativity_and_distributivity(
        (n1, c1) in poly_strategy(), (n2, c2) in poly_strategy(), (n3, c3) in poly_strategy()
    ) {
        let g = mixed();
        let (p, q, r) = (homogeneous(&g, n1, &c1), homogeneous(&g, n2, &c2), homogeneous(&g, n3, &c3));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        let s = homogeneous(&g, n2, &c3);
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
    }

    #[test]
    fn normalization_is_idempotent(seq in prop::collection::vec(0u32..6, 0..6)) {
        let g = mixed();
        let ids: Vec<_> = seq.iter().map(|i| g.canonical()[*i as usize].id).collect();
        if let Normalized::Term { monomial, .. } = g.normalize_monomial(&ids).unwrap() {
            let again: Vec<_> = monomial.expanded().map(|f| f.gen).collect();
            prop_assert_eq!(g.normalize_monomial(&again).unwrap(), Normalized::Term { sign: 1, monomial });
        }
    }

    #[test]
    fn basis_size_matches_hilbert_series(degrees in prop::collection::vec(1u32..=6, 0..5)) {
        let named: Vec<(String, u32)> = degrees.iter().enumerate().map(|(i, d)| (format!("g{i}"), *d)).collect();
        let g = GeneratorSet::new(named.iter().map(|(s, d)| (s.as_str(), *d))).unwrap();
        let series = hilbert_series(&degrees, 16);
        for n in 0..=16u32 {
            prop_assert_eq!(g.basis_of_degree(n).len() as u64, series[n as usize], "degree {}", n);
        }
    }
}

#[test]
fn theorem_3_2_basis_rows() {
    let m = common::theorem_3_2(5);
    let g = m.generators();
    let show = |n| g.basis_of_degree(n).iter().map(|x| g.monomial_string(x)).collect::<Vec<_>>();
    assert_eq!(show(12), ["v1^2", "v1*v2", "v2^2"]);
    assert_eq!(show(16), ["v1*w", "v2*w"]);
    assert!(show(1).is_empty());
    assert_eq!(show(0), ["1"]);
}
