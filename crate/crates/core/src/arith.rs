//! Exact rational arithmetic and the combinatorial sequences used everywhere
//! else: factorials, binomial coefficients and the Bernoulli-type sequences
//! `λ_s` and `λ̂_s`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Factorials and binomials below this bound are served from a memo table.
pub const DEFAULT_MEMO_BOUND: usize = 128;

struct Memo {
    factorials: Vec<BigUint>,
    // Pascal rows 0..DEFAULT_MEMO_BOUND, row n has n + 1 entries.
    pascal: Vec<Vec<BigUint>>,
}

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| {
        let mut factorials = Vec::with_capacity(DEFAULT_MEMO_BOUND);
        let mut acc = BigUint::one();
        factorials.push(acc.clone());
        for k in 1..DEFAULT_MEMO_BOUND {
            acc *= k;
            factorials.push(acc.clone());
        }
        let mut pascal: Vec<Vec<BigUint>> = Vec::with_capacity(DEFAULT_MEMO_BOUND);
        for n in 0..DEFAULT_MEMO_BOUND {
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &pascal[n - 1][k - 1] + &pascal[n - 1][k];
            }
            pascal.push(row);
        }
        Memo { factorials, pascal }
    })
}

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: usize) -> BigUint {
    let memo = memo();
    if n < memo.factorials.len() {
        return memo.factorials[n].clone();
    }
    let mut acc = memo.factorials[memo.factorials.len() - 1].clone();
    for k in memo.factorials.len()..=n {
        acc *= k;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an integer; zero outside `0 ≤ k ≤ n`.
pub fn binom_int(n: usize, k: i64) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    let k = k as usize;
    let memo = memo();
    if n < memo.pascal.len() {
        return memo.pascal[n][k].clone();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a [`Rational`].
pub fn binom(n: usize, k: i64) -> Rational {
    Rational::from_integer(BigInt::from(binom_int(n, k)))
}

/// Binomial coefficient for small arguments; panics if the value overflows `u64`.
pub(crate) fn binom_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(n - i)
            .expect("binomial coefficient overflows u64")
            / (i + 1);
    }
    acc
}

/// The two Bernoulli-type sequences
/// `Σ λ_s x^s = -x/(1 - e^x)` and `Σ λ̂_s x^s = -x e^x/(1 - e^x)`,
/// indexed from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTable {
    pub lambda: Vec<Rational>,
    pub lambda_hat: Vec<Rational>,
}

impl LambdaTable {
    /// Number of computed entries in each sequence.
    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }
}

/// Inverts a power series with nonzero constant term, truncated after `len` terms.
fn invert_series(a: &[Rational], len: usize) -> Vec<Rational> {
    assert!(!a[0].is_zero(), "series with zero constant term is not invertible");
    let inv0 = a[0].recip();
    let mut b = vec![Rational::zero(); len];
    if len == 0 {
        return b;
    }
    b[0] = inv0.clone();
    for n in 1..len {
        let mut acc = Rational::zero();
        for k in 1..=n.min(a.len() - 1) {
            acc += &a[k] * &b[n - k];
        }
        b[n] = -acc * &inv0;
    }
    b
}

/// Computes `λ_0..λ_max_index` and `λ̂_0..λ̂_max_index` by exact inversion of
/// the exponential generating functions.
///
/// `-x/(1 - e^x) = 1 / Σ x^k/(k+1)!` and `-x e^x/(1 - e^x) = 1 / Σ (-x)^k/(k+1)!`.
pub fn lambda_seq(max_index: usize) -> LambdaTable {
    let len = max_index + 1;
    let mut forward = Vec::with_capacity(len);
    let mut backward = Vec::with_capacity(len);
    for k in 0..len {
        let c = Rational::new(BigInt::one(), BigInt::from(factorial(k + 1)));
        backward.push(if k % 2 == 0 { c.clone() } else { -c.clone() });
        forward.push(c);
    }
    LambdaTable {
        lambda: invert_series(&forward, len),
        lambda_hat: invert_series(&backward, len),
    }
}

/// Shared table of `λ` values large enough for the letter products used in
/// this crate; grows on demand.
pub(crate) fn lambda(index: usize) -> Rational {
    static TABLE: OnceLock<LambdaTable> = OnceLock::new();
    let table = TABLE.get_or_init(|| lambda_seq(DEFAULT_MEMO_BOUND));
    if index < table.len() {
        table.lambda[index].clone()
    } else {
        lambda_seq(index).lambda[index].clone()
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for v in values {
        if !v.denom().is_one() {
            l = l.lcm(v.denom());
        }
    }
    l
}

/// Renders a rational as `p/q`, or `p` when integral.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` into a rational; rejects a zero denominator.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(text.parse().ok()?)),
    }
}

/// Nearest double, correct even when numerator and denominator overflow `f64`.
pub fn rational_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

pub(crate) fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}
