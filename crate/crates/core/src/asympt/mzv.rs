use serde::Serialize;

use crate::error::{Error, Result};

/// A truncated multiple zeta value `Σ_{N ≥ n_1 > ⋯ > n_l > 0} Π n_i^{−s_i}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MzvValue {
    pub s_row: Vec<u32>,
    pub value: f64,
    pub cutoff: usize,
    /// Crude bound on the omitted tail.
    pub error_estimate: f64,
}

pub const DEFAULT_MZV_CUTOFF: usize = 1_000_000;

/// Plain nested partial sums with `n_1 ≤ cutoff`.
pub fn mzv_numeric(s_row: &[u32], cutoff: usize) -> Result<MzvValue> {
    match s_row.first() {
        None => {
            return Ok(MzvValue {
                s_row: Vec::new(),
                value: 1.0,
                cutoff,
                error_estimate: 0.0,
            })
        }
        Some(&s1) if s1 < 2 => {
            return Err(Error::Inadmissible(format!(
                "ζ({}) diverges: the first entry must be at least 2",
                join(s_row)
            )))
        }
        _ => {}
    }
    if s_row.contains(&0) {
        return Err(Error::InvalidArgument("MZV entries must be positive".into()));
    }
    if cutoff < s_row.len() {
        return Err(Error::InvalidArgument(format!("cutoff {cutoff} is below the depth")));
    }
    // inner[n] = Σ over n > n_{k+1} > ⋯ of the inner factors, built innermost first
    let mut inner = vec![1.0f64; cutoff + 1];
    let mut value = 0.0;
    for &s in s_row.iter().rev() {
        let mut next = vec![0.0f64; cutoff + 1];
        let mut acc = 0.0;
        for n in 1..=cutoff {
            // strictly smaller indices only
            next[n] = acc;
            acc += inner[n] * (n as f64).powi(-(s as i32));
        }
        inner = next;
        value = acc;
    }
    let s1 = s_row[0] as f64;
    let n = cutoff as f64;
    let inner_bound: f64 = s_row[1..]
        .iter()
        .map(|&s| if s >= 2 { s as f64 / (s as f64 - 1.0) } else { 1.0 + n.ln() })
        .product();
    Ok(MzvValue {
        s_row: s_row.to_vec(),
        value,
        cutoff,
        error_estimate: n.powf(1.0 - s1) / (s1 - 1.0) * inner_bound,
    })
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
