//! Benchmark inputs shared by the criterion targets.

use sullivan_core::random::{three_stage_234, two_stage};
use sullivan_core::MinimalModel;

/// `Λ(u, v, y)` with `|u| = 2m+1`, `|v| = 2m+r` and `dy = uv`.
pub fn uvy(r: u32, m: u32) -> MinimalModel {
    MinimalModel::builder()
        .generator("u", 2 * m + 1)
        .generator("v", 2 * m + r)
        .generator("y", 4 * m + r)
        .d("y", &[(1, &["u", "v"])])
        .build()
        .expect("well-formed")
}

pub fn random_models(count: u64) -> Vec<MinimalModel> {
    (0..count).map(two_stage).collect()
}

pub fn random_234(count: u64) -> Vec<MinimalModel> {
    (0..count).map(three_stage_234).collect()
}
