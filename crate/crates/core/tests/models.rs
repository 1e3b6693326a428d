mod common;

use num_traits::{ToPrimitive, Zero};
use sullivan_core::homlin::kernel_basis;
use sullivan_core::{
    build_ks_total, prop23_check, remove_base, Certificate, DerBasisElement, DerComplex, KsExtension,
    MinimalModel, Monomial, Violation,
};

/// Rebuilds `m` by name, optionally shifting one generator's degree and
/// flipping the sign of one differential term.
fn rebuild(m: &MinimalModel, shift: Option<&str>, flip: Option<(&str, usize)>) -> MinimalModel {
    let g = m.generators();
    let mut b = MinimalModel::builder();
    for x in g.iter() {
        let deg = if Some(x.name.as_str()) == shift { x.degree + 2 } else { x.degree };
        b = b.generator(&x.name, deg);
    }
    for x in g.iter() {
        let mut terms: Vec<(i64, Vec<String>)> = Vec::new();
        for (i, (mono, c)) in m.d(x.id).terms().enumerate() {
            let mut c = c.to_integer().to_i64().expect("integer fixture coefficients");
            if flip == Some((x.name.as_str(), i)) {
                c = -c;
            }
            terms.push((c, mono.expanded().map(|f| g.generator(f.gen).name.clone()).collect()));
        }
        let names: Vec<Vec<&str>> = terms.iter().map(|(_, n)| n.iter().map(String::as_str).collect()).collect();
        let spec: Vec<(i64, &[&str])> = terms.iter().zip(&names).map(|((c, _), n)| (*c, n.as_slice())).collect();
        if !spec.is_empty() {
            b = b.d(&x.name, &spec);
        }
    }
    b.build().unwrap()
}

#[test]
fn fixtures_validate() {
    for (name, m) in common::all_valid() {
        assert!(m.is_valid(), "{name}: {}", m.validate());
        assert_eq!(rebuild(&m, None, None), m, "{name}: rebuild");
    }
}

#[test]
fn printed_defects_are_rejected() {
    let y = common::model_y_printed().validate();
    assert!(matches!(&y.violations[..], [Violation::DSquaredNonzero { generator, .. }] if generator == "w"));
    let q1 = common::theorem_4_2(1).validate();
    assert!(matches!(&q1.violations[..], [Violation::WrongDegree { monomial, found: 6, expected: 7, .. }] if monomial == "v^3"));

    let fibre = common::theorem_4_1_r2();
    let mut ext = KsExtension::new(&fibre, "z", 2).unwrap();
    ext.perturb("u1", &[(1, &["z", "v2"])]).unwrap();
    ext.perturb("u2", &[(1, &["z", "v1"])]).unwrap();
    assert!(build_ks_total(&fibre, &ext).is_err());
}

#[test]
fn degree_corruptions_are_rejected() {
    for (name, m) in common::all_valid() {
        let g = m.generators();
        for x in g.iter() {
            let involved = !m.d(x.id).is_zero() || m.differential().values().any(|p| p.monomials().any(|t| t.contains(x.id)));
            if !involved {
                continue;
            }
            let bad = rebuild(&m, Some(&x.name), None);
            assert!(
                bad.validate().violations.iter().any(|v| matches!(v, Violation::WrongDegree { .. })),
                "{name}: shifting {} went unnoticed",
                x.name
            );
        }
    }
}

#[test]
fn sign_corruptions_are_rejected_unless_the_term_is_closed() {
    // when v occurs in no other differential, flipping term t of d(v)
    // changes d² only at v, by -2·d(t)
    let mut rejected = 0;
    for (name, m) in common::all_valid() {
        for x in m.generators().iter() {
            if m.differential().values().any(|p| p.monomials().any(|t| t.contains(x.id))) {
                continue;
            }
            for (i, (mono, c)) in m.d(x.id).terms().enumerate() {
                let bad = rebuild(&m, None, Some((&x.name, i)));
                let dt = m.apply_d(&sullivan_core::Polynomial::term(mono.clone(), c.clone()));
                let report = bad.validate();
                assert_eq!(report.is_valid(), dt.is_zero(), "{name}: flip term {i} of d({})", x.name);
                if !report.is_valid() {
                    rejected += 1;
                    assert!(report.violations.iter().all(|v| matches!(v, Violation::DSquaredNonzero { .. })));
                }
            }
        }
    }
    assert!(rejected > 10);
}

#[test]
fn ks_round_trip() {
    for r in 2..=6 {
        for m in 0..=3 {
            let (fibre, ext) = common::x_rm_extension(r, m);
            let total = build_ks_total(&fibre, &ext).unwrap();
            assert_eq!(remove_base(&total, ext.base_id()).unwrap(), fibre);
        }
    }
    let (fibre, ext) = common::theorem_4_1_r2_extension();
    assert_eq!(remove_base(&build_ks_total(&fibre, &ext).unwrap(), ext.base_id()).unwrap(), fibre);
}

fn base_column_vanishes_on_cycles(total: &MinimalModel, base: sullivan_core::GenId) -> bool {
    let c = DerComplex::new(total).unwrap();
    let n = total.generators().generator(base).degree;
    let w_star = DerBasisElement { source: base, target: Monomial::one() };
    let col = c.basis(n).iter().position(|e| *e == w_star).unwrap();
    kernel_basis(&c.matrix_of_d(n).unwrap()).iter().all(|v| v[col].is_zero())
}

#[test]
fn theorem_3_1_extensions_pass() {
    for r in (2..=6).step_by(2) {
        for m in 0..=3u32 {
            if (4 * m + 2) % r != 0 {
                continue;
            }
            let (fibre, ext) = common::x_rm_extension(r, m);
            let total = build_ks_total(&fibre, &ext).unwrap();
            let cert = prop23_check(&total, ext.base_id()).unwrap();
            let Certificate::Pass { base_boundary, .. } = &cert else {
                panic!("X_{{{r},{m}}}: {cert:?}");
            };
            let shown = base_boundary.display(total.generators());
            assert!(shown == "(v,u)" || shown == "-(v,u)", "{shown}");
            assert!(base_column_vanishes_on_cycles(&total, ext.base_id()));
        }
    }
}

#[test]
fn trivial_extension_fails_with_base_dual() {
    let fibre = common::x_rm(2, 1);
    let ext = KsExtension::new(&fibre, "z", 2).unwrap();
    let total = build_ks_total(&fibre, &ext).unwrap();
    match prop23_check(&total, ext.base_id()).unwrap() {
        Certificate::Fail { witness } => assert_eq!(witness.display(total.generators()), "z*"),
        other => panic!("{other:?}"),
    }
    assert!(!base_column_vanishes_on_cycles(&total, ext.base_id()));
}

#[test]
fn theorem_4_1_extension_passes() {
    let (_, ext) = common::theorem_4_1_r2_extension();
    let total = common::theorem_4_1_r2_total();
    let Certificate::Pass { base_boundary, .. } = prop23_check(&total, ext.base_id()).unwrap() else {
        panic!("expected PASS");
    };
    assert_eq!(base_boundary.display(total.generators()), "-(u1,v2) + (u2,v1)");
    assert!(base_column_vanishes_on_cycles(&total, ext.base_id()));
}
