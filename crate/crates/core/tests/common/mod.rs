#![allow(dead_code)]

use sullivan_core::{build_ks_total, KsExtension, MinimalModel};

pub fn example_2_3() -> MinimalModel {
    MinimalModel::builder()
        .generator("x", 3)
        .generator("y", 3)
        .generator("z", 5)
        .generator("w", 7)
        .d("z", &[(1, &["x", "y"])])
        .d("w", &[(1, &["x", "z"])])
        .build()
        .unwrap()
}

/// x1, x2 in degree 2, y in degree 3, dy = x1*x2.
pub fn example_2_4() -> MinimalModel {
    MinimalModel::builder()
        .generator("x1", 2)
        .generator("x2", 2)
        .generator("y", 3)
        .d("y", &[(1, &["x1", "x2"])])
        .build()
        .unwrap()
}

pub fn x_rm(r: u32, m: u32) -> MinimalModel {
    MinimalModel::builder()
        .generator("u", 2 * m + 1)
        .generator("v", 2 * m + r)
        .generator("y", 4 * m + r)
        .d("y", &[(1, &["u", "v"])])
        .build()
        .unwrap()
}

/// The extension of `x_rm` by `z` of degree r with D(v) = u*z.
pub fn x_rm_extension(r: u32, m: u32) -> (MinimalModel, KsExtension) {
    let fibre = x_rm(r, m);
    let mut ext = KsExtension::new(&fibre, "z", r).unwrap();
    ext.perturb("v", &[(1, &["u", "z"])]).unwrap();
    (fibre, ext)
}

pub fn theorem_3_2(n: u32) -> MinimalModel {
    MinimalModel::builder()
        .generator("v1", n + 1)
        .generator("v2", n + 1)
        .generator("w", 2 * n)
        .generator("u1", 3 * n)
        .generator("u2", 3 * n)
        .generator("y", 4 * n)
        .d("y", &[(1, &["u1", "v1"]), (1, &["u2", "v2"])])
        .d("u1", &[(-1, &["v2", "w"])])
        .d("u2", &[(1, &["v1", "w"])])
        .build()
        .unwrap()
}

pub fn theorem_4_1_r1() -> MinimalModel {
    MinimalModel::builder()
        .generator("v", 2)
        .generator("u", 3)
        .generator("y", 4)
        .d("y", &[(1, &["u", "v"])])
        .build()
        .unwrap()
}

pub fn theorem_4_1_r2() -> MinimalModel {
    MinimalModel::builder()
        .generator("v1", 2)
        .generator("v2", 2)
        .generator("u1", 3)
        .generator("u2", 3)
        .generator("y", 4)
        .d("y", &[(1, &["u1", "v1"]), (1, &["u2", "v2"])])
        .build()
        .unwrap()
}

/// D(u1) = z*v2, D(u2) = -z*v1; the sign on u2 is forced by D² = 0.
pub fn theorem_4_1_r2_extension() -> (MinimalModel, KsExtension) {
    let fibre = theorem_4_1_r2();
    let mut ext = KsExtension::new(&fibre, "z", 2).unwrap();
    ext.perturb("u1", &[(1, &["z", "v2"])]).unwrap();
    ext.perturb("u2", &[(-1, &["z", "v1"])]).unwrap();
    (fibre, ext)
}

pub fn theorem_4_1_r2_total() -> MinimalModel {
    let (fibre, ext) = theorem_4_1_r2_extension();
    build_ks_total(&fibre, &ext).unwrap()
}

pub fn theorem_4_2(q: i64) -> MinimalModel {
    MinimalModel::builder()
        .generator("v", 2)
        .generator("x", 3)
        .generator("u", 5)
        .generator("y", 6)
        .d("y", &[(1, &["u", "v"]), (1, &["v", "v", "x"]), (q, &["v", "v", "v"])])
        .build()
        .unwrap()
}

fn model_y_builder(psi_sign: i64) -> sullivan_core::model::ModelBuilder {
    MinimalModel::builder()
        .generator("a", 2)
        .generator("b", 2)
        .generator("c", 2)
        .generator("x", 3)
        .generator("y", 3)
        .generator("z", 3)
        .generator("phi", 4)
        .generator("psi", 4)
        .generator("w", 5)
        .d("x", &[(1, &["a", "a"]), (1, &["a", "c"])])
        .d("y", &[(1, &["a", "b"])])
        .d("z", &[(1, &["b", "c"])])
        .d("phi", &[(1, &["x", "b"]), (-1, &["a", "y"]), (-1, &["a", "z"])])
        .d("psi", &[(psi_sign, &["c", "y"]), (-psi_sign, &["a", "z"])])
        .d(
            "w",
            &[
                (1, &["phi", "a"]),
                (1, &["x", "y"]),
                (1, &["psi", "a"]),
                (1, &["c", "c", "c"]),
                (1, &["b", "b", "b"]),
            ],
        )
}

/// Model Y with d(psi) = a*z - c*y, the sign choice making d² = 0.
pub fn model_y() -> MinimalModel {
    model_y_builder(-1).build().unwrap()
}

/// Model Y exactly as printed, with d(psi) = c*y - a*z; not a DGA.
pub fn model_y_printed() -> MinimalModel {
    model_y_builder(1).build().unwrap()
}

pub fn free_odd(n: u32) -> MinimalModel {
    MinimalModel::builder().generator("x", 2 * n + 1).build().unwrap()
}

pub fn free_even(n: u32) -> MinimalModel {
    MinimalModel::builder().generator("v", n).build().unwrap()
}

/// Every valid fixture, by name.
pub fn all_valid() -> Vec<(String, MinimalModel)> {
    let mut out = vec![
        ("example_2_3".to_string(), example_2_3()),
        ("example_2_4".to_string(), example_2_4()),
        ("theorem_4_1_r1".to_string(), theorem_4_1_r1()),
        ("theorem_4_1_r2".to_string(), theorem_4_1_r2()),
        ("theorem_4_1_r2_total".to_string(), theorem_4_1_r2_total()),
        ("theorem_4_2_q0".to_string(), theorem_4_2(0)),
        ("theorem_4_5".to_string(), model_y()),
        ("k_odd_3".to_string(), free_odd(1)),
        ("k_even_2".to_string(), free_even(2)),
    ];
    for r in 2..=6 {
        for m in 0..=3 {
            out.push((format!("x_{r}_{m}"), x_rm(r, m)));
        }
    }
    for n in [1, 3, 5] {
        out.push((format!("theorem_3_2_n{n}"), theorem_3_2(n)));
    }
    out
}

/// The valid fixtures with generators in degrees 2, 3, 4 only.
pub fn degrees_234() -> Vec<(String, MinimalModel)> {
    all_valid()
        .into_iter()
        .filter(|(_, m)| m.generators().iter().all(|g| (2..=4).contains(&g.degree)))
        .collect()
}
