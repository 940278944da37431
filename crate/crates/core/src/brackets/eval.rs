use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::dp::{bi_level, chain_sum, chain_sum_exact, zeta_level, Level};
use super::index::{BracketIndex, Model};
use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::series::QSeries;

/// Default cap on the number of `q`-powers a float evaluation may use.
pub const DEFAULT_TERM_BUDGET: usize = 20_000;

fn levels_of(idx: &BracketIndex) -> Vec<Level> {
    let bottom = idx.bottom_as_bi();
    idx.s
        .iter()
        .zip(&bottom)
        .map(|(&s, &r)| match idx.model {
            Model::Mono | Model::Bi => bi_level(s, r),
            Model::Zeta => zeta_level(s, r),
        })
        .collect()
}

/// The product of factorials dividing the integer chain sum.
fn normalizer(idx: &BracketIndex) -> BigInt {
    let bottom = idx.bottom_as_bi();
    let mut c = BigInt::one();
    for (&s, &r) in idx.s.iter().zip(&bottom) {
        let rf = match idx.model {
            Model::Zeta => factorial(r as usize - 1),
            _ => factorial(r as usize),
        };
        c *= BigInt::from(factorial(s as usize - 1) * rf);
    }
    c
}

/// Exact expansion of any valid index through `q^order`.
pub fn evaluate(idx: &BracketIndex, order: usize) -> QSeries {
    let num = chain_sum_exact(&levels_of(idx), order);
    QSeries::from_integers(&num, &normalizer(idx))
}

/// `[s_1,…,s_l; r_1,…,r_l]` through `q^order`.
pub fn eval_bi(s: &[u32], r: &[u32], order: usize) -> Result<QSeries> {
    Ok(evaluate(&BracketIndex::bi(s, r)?, order))
}

/// `ζ[s_1,…,s_l; r_1,…,r_l]` through `q^order`.
pub fn eval_zeta(s: &[u32], r: &[u32], order: usize) -> Result<QSeries> {
    Ok(evaluate(&BracketIndex::zeta(s, r)?, order))
}

/// `[s_1,…,s_l]` through `q^order`.
pub fn eval_mono(s: &[u32], order: usize) -> Result<QSeries> {
    Ok(evaluate(&BracketIndex::mono(s)?, order))
}

/// Number of `q`-powers a float evaluation at `q` keeps: the first exponent
/// with `q^E < 1e-17`, capped by `term_budget`.
pub fn float_order(q: f64, term_budget: usize) -> Result<usize> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::QOutOfRange(q));
    }
    let e = ((1e-17f64).ln() / q.ln()).ceil();
    Ok((e as usize).clamp(1, term_budget.max(1)))
}

/// Floating-point value of the bracket at a real `0 < q < 1`, summed in
/// increasing powers of `q`.
pub fn eval_float(idx: &BracketIndex, q: f64, term_budget: usize) -> Result<f64> {
    let order = float_order(q, term_budget)?;
    let coeffs = chain_sum::<f64>(&levels_of(idx), order).expect("float chain sums do not overflow");
    let c = normalizer(idx).to_f64().unwrap_or(f64::INFINITY);
    let mut total = 0.0;
    let mut qk = 1.0;
    for a in coeffs {
        total += a * qk;
        qk *= q;
    }
    Ok(total / c)
}
