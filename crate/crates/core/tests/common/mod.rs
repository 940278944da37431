//! Independent oracles for the integration tests. Nothing here calls into
//! the chain recursion of the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use qzeta::brackets::{BracketIndex, Model};

fn fact(n: u32) -> i128 {
    (1..=n as i128).product()
}

/// Direct enumeration of every tuple `n_1 > ⋯ > n_l > 0`, `d_i ≥ 1` with
/// `Σ n_i d_i ≤ order`, weighted term by term.
pub fn naive_expansion(idx: &BracketIndex, order: usize) -> Vec<BigRational> {
    let l = idx.s.len();
    let zeta = idx.model == Model::Zeta;
    let r: Vec<u32> = match idx.model {
        Model::Mono => vec![0; l],
        _ => idx.r.clone(),
    };
    let mut acc = vec![0i128; order + 1];

    // innermost index first so that n_{i+1} is known when weighting n_i
    fn walk(
        i: isize,
        below: usize,
        exp: usize,
        weight: i128,
        s: &[u32],
        r: &[u32],
        zeta: bool,
        acc: &mut [i128],
    ) {
        if i < 0 {
            acc[exp] += weight;
            return;
        }
        let iu = i as usize;
        let order = acc.len() - 1;
        let mut n = below + 1;
        while exp + n <= order {
            let base = if zeta { (n - below) as i128 } else { n as i128 };
            let rexp = if zeta { r[iu] - 1 } else { r[iu] };
            let wn = base.pow(rexp);
            let mut d = 1;
            while exp + n * d <= order {
                let w = weight * wn * (d as i128).pow(s[iu] - 1);
                walk(i - 1, n, exp + n * d, w, s, r, zeta, acc);
                d += 1;
            }
            n += 1;
        }
    }
    walk(l as isize - 1, 0, 0, 1, &idx.s, &r, zeta, &mut acc);

    let c: i128 = idx
        .s
        .iter()
        .zip(&r)
        .map(|(&s, &r)| fact(s - 1) * if zeta { fact(r - 1) } else { fact(r) })
        .product();
    acc.into_iter()
        .map(|a| BigRational::new(BigInt::from(a), BigInt::from(c)))
        .collect()
}

/// Number of divisors of `m`.
pub fn divisor_count(m: u64) -> u64 {
    (1..=m).filter(|d| m.is_multiple_of(*d)).count() as u64
}

/// `σ_k(m)`.
pub fn sigma(k: u32, m: u64) -> u64 {
    (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| d.pow(k)).sum()
}

/// Bernoulli numbers `B_0..B_n` with `B_1 = −1/2`, from
/// `Σ_{k<m+1} C(m+1, k) B_k = 0`.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
    for m in 1..=n {
        let mut binom = BigInt::from(1);
        let mut acc = BigRational::from_integer(0.into());
        for k in 0..m {
            acc += BigRational::from_integer(binom.clone()) * &b[k];
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        // binom is now C(m+1, m)
        b.push(-acc / BigRational::from_integer(binom));
    }
    b
}
