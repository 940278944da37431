use crate::brackets::{enumerate_indices, BracketIndex, Model};

/// Taylor coefficients `x^0…x^n` of `num(x) / den(x)`; `den[0]` must be ±1.
pub fn rational_gf(num: &[i64], den: &[i64], n: usize) -> Vec<i64> {
    assert!(den.first().is_some_and(|d| d.abs() == 1), "den(0) must be ±1");
    let mut out = vec![0i64; n + 1];
    for k in 0..=n {
        let mut acc = num.get(k).copied().unwrap_or(0);
        for j in 1..den.len().min(k + 1) {
            acc -= den[j] * out[k - j];
        }
        out[k] = acc * den[0];
    }
    out
}

/// Expected number of indices of weight ≤ n, n = 0…max_n:
/// `1/(1−2x)` for mono-brackets and `(1−x)/(1−3x+x²)` otherwise.
pub fn bracket_counts(model: Model, max_n: usize) -> Vec<i64> {
    match model {
        Model::Mono => rational_gf(&[1], &[1, -2], max_n),
        Model::Bi | Model::Zeta => rational_gf(&[1, -1], &[1, -3, 1], max_n),
    }
}

/// Coefficients of `(1−x²+x⁴)/((1−x)²(1−2x²−2x³))`, a conjectural guess for
/// the dimensions; for comparison only.
pub fn conjectural_dims(max_n: usize) -> Vec<i64> {
    // (1−x)²(1−2x²−2x³) = 1 − 2x − x² + 2x³ + 2x⁴ − 2x⁵
    rational_gf(&[1, 0, -1, 0, 1], &[1, -2, -1, 2, 2, -2], max_n)
}

/// The member of `{idx, dual(idx)}` with the larger top row.
pub fn dual_representative(idx: &BracketIndex) -> BracketIndex {
    match idx.dual() {
        Some(d) if (&d.s, &d.r) > (&idx.s, &idx.r) => d,
        _ => idx.clone(),
    }
}

/// Number of duality orbits among the zeta indices of weight ≤ `max_weight`.
pub fn dual_class_count(max_weight: u32) -> usize {
    enumerate_indices(Model::Zeta, max_weight)
        .iter()
        .filter(|idx| dual_representative(idx) == **idx)
        .count()
}
