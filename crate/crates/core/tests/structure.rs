//! Structural identities of `(Der(ΛV), D, [,])` on every fixture and on 200
//! seeded random two-stage models.

mod common;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sullivan_core::random::two_stage;
use sullivan_core::{
    bracket, differential, extend, homology_of, rat, DerComplex, Derivation, MinimalModel, Polynomial,
};

fn sign(k: i64) -> sullivan_core::Rational {
    rat(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn models() -> Vec<(String, MinimalModel)> {
    let mut out = common::all_valid();
    out.extend((0..200).map(|s| (format!("random seed {s}"), two_stage(s))));
    out
}

fn random_derivation(c: &DerComplex, rng: &mut ChaCha8Rng) -> Derivation {
    let n = rng.gen_range(1..=c.top_degree().max(1));
    let coords: Vec<_> = (0..c.dim(n)).map(|_| rat(rng.gen_range(-2..=2))).collect();
    c.derivation(n, &coords)
}

fn random_element(m: &MinimalModel, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = rng.gen_range(0..=2 * m.top_degree());
    let mut p = Polynomial::zero();
    for mono in m.generators().basis_of_degree(n) {
        p.add_term(mono, rat(rng.gen_range(-2..=2)));
    }
    p
}

#[test]
fn d_squared_vanishes() {
    for (name, m) in models() {
        let c = DerComplex::new(&m).unwrap();
        for n in 2..=c.top_degree() + 1 {
            let dd = c.matrix_of_d(n - 1).unwrap().mul(&c.matrix_of_d(n).unwrap());
            assert!(dd.is_zero(), "{name}: D∘D ≠ 0 in degree {n}");
        }
    }
}

#[test]
fn bracket_identities() {
    for (i, (name, m)) in models().into_iter().enumerate() {
        let c = DerComplex::new(&m).unwrap();
        let g = m.generators();
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        for _ in 0..4 {
            let a = random_derivation(&c, &mut rng);
            let b = random_derivation(&c, &mut rng);
            let t = random_derivation(&c, &mut rng);
            let (p, q, r) = (a.degree(), b.degree(), t.degree());

            let ab = bracket(g, &a, &b);
            let ba = bracket(g, &b, &a);
            assert_eq!(ab, ba.scale(&-sign(p * q)), "{name}: antisymmetry");

            let jacobi = &(&bracket(g, &a, &bracket(g, &b, &t)).scale(&sign(p * r))
                + &bracket(g, &b, &bracket(g, &t, &a)).scale(&sign(q * p)))
                + &bracket(g, &t, &bracket(g, &a, &b)).scale(&sign(r * q));
            assert!(jacobi.is_zero(), "{name}: Jacobi");

            let lhs = differential(&m, &ab);
            let rhs = &bracket(g, &differential(&m, &a), &b)
                + &bracket(g, &a, &differential(&m, &b)).scale(&sign(p));
            assert_eq!(lhs, rhs, "{name}: D is a derivation of the bracket");
        }
    }
}

#[test]
fn extend_is_a_derivation() {
    for (i, (name, m)) in models().into_iter().enumerate() {
        let c = DerComplex::new(&m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
        for _ in 0..4 {
            let theta = random_derivation(&c, &mut rng);
            let p = random_element(&m, &mut rng);
            let q = random_element(&m, &mut rng);
            let dp = p.degree().unwrap_or(0) as i64;
            let lhs = extend(&theta, &(&p * &q));
            let rhs = &(&extend(&theta, &p) * &q) + &(&p * &extend(&theta, &q)).scale(&sign(theta.degree() * dp));
            assert_eq!(lhs, rhs, "{name}: derivation law");
        }
    }
}

#[test]
fn rank_nullity_and_euler() {
    for (name, m) in models() {
        let c = DerComplex::new(&m).unwrap();
        let h = homology_of(&c);
        let (mut lhs, mut rhs) = (0i64, 0i64);
        for d in &h.degrees {
            assert_eq!(d.cycles + d.rank_out, d.chains, "{name}: rank-nullity in degree {}", d.degree);
            let out = c.matrix_of_d(d.degree).unwrap();
            for r in &d.representatives {
                assert!(out.mul_vec(&c.coordinates(r)).iter().all(Zero::is_zero), "{name}: representative");
            }
            let s = if d.degree % 2 == 0 { 1 } else { -1 };
            lhs += s * d.dim() as i64;
            rhs += s * d.chains as i64;
        }
        let rank_d1 = h.get(1).map_or(0, |d| d.rank_out) as i64;
        assert_eq!(lhs, rhs + rank_d1, "{name}: alternating sums");
    }
}
