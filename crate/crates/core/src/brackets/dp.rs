//! Chain sums `Σ_{n_1>…>n_l>0, d_i>0} Π g_i(n_i, n_{i+1}) d_i^{s_i-1} q^{Σ n_i d_i}`
//! where each `g_i` is a polynomial in `n_i` and `n_{i+1}` (with `n_{l+1} = 0`).
//!
//! Levels are processed innermost first. For every level `j` and candidate
//! `m = n_j` the series `H_j(m)` is built from the moment prefix sums
//! `P^{(b)}_{j+1}(m) = Σ_{m'<m} m'^b H_{j+1}(m')`, so the coupling between
//! adjacent levels costs one dense combination per monomial of `g_j`.

use num_bigint::BigInt;
use num_traits::Zero;

/// Scalars the chain DP can run over. Integer impls report overflow with `None`.
pub(crate) trait Scalar: Clone {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, b: &Self) -> Option<Self>;
    fn add_assign(&mut self, b: &Self) -> Option<()>;

    fn add_mul(&mut self, a: &Self, b: &Self) -> Option<()> {
        let p = a.mul(b)?;
        self.add_assign(&p)
    }
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        self.checked_mul(*b)
    }
    fn add_assign(&mut self, b: &Self) -> Option<()> {
        *self = self.checked_add(*b)?;
        Some(())
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        Some(self * b)
    }
    fn add_assign(&mut self, b: &Self) -> Option<()> {
        *self += b;
        Some(())
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        Some(self * b)
    }
    fn add_assign(&mut self, b: &Self) -> Option<()> {
        *self += b;
        Some(())
    }
}

/// `coef · n_j^a · n_{j+1}^b`
#[derive(Clone, Copy, Debug)]
pub(crate) struct Monomial {
    pub coef: i64,
    pub a: u32,
    pub b: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub s: u32,
    pub terms: Vec<Monomial>,
}

fn pow<T: Scalar>(base: i64, e: u32) -> Option<T> {
    let b = T::from_i64(base);
    let mut acc = T::from_i64(1);
    for _ in 0..e {
        acc = acc.mul(&b)?;
    }
    Some(acc)
}

fn tri(k: usize) -> usize {
    k * (k + 1) / 2
}

/// Integer-valued (or float) coefficients of the chain sum through `q^order`.
/// Returns `None` only when an integer scalar overflows.
pub(crate) fn chain_sum<T: Scalar>(levels: &[Level], order: usize) -> Option<Vec<T>> {
    let l = levels.len();
    let mut out = vec![T::zero(); order + 1];
    if l == 0 {
        out[0] = T::from_i64(1);
        return Some(out);
    }
    if tri(l) > order {
        return Some(out);
    }

    // Moment exponents each level must expose to the one above it.
    let moments: Vec<Vec<u32>> = (0..l)
        .map(|j| {
            if j == 0 {
                vec![0]
            } else {
                let mut bs: Vec<u32> = levels[j - 1].terms.iter().map(|t| t.b).collect();
                bs.sort_unstable();
                bs.dedup();
                bs
            }
        })
        .collect();
    let mut prefix: Vec<Vec<Vec<T>>> = moments
        .iter()
        .map(|bs| vec![vec![T::zero(); order + 1]; bs.len()])
        .collect();

    // d^{s-1} for every level and every d ≤ order.
    let dweights: Vec<Vec<T>> = levels
        .iter()
        .map(|lv| {
            (0..=order)
                .map(|d| if d == 0 { Some(T::zero()) } else { pow(d as i64, lv.s - 1) })
                .collect::<Option<Vec<T>>>()
        })
        .collect::<Option<_>>()?;

    let max_exp = levels
        .iter()
        .flat_map(|lv| lv.terms.iter().flat_map(|t| [t.a, t.b]))
        .chain(moments.iter().flatten().copied())
        .max()
        .unwrap_or(0);

    let mut x = vec![T::zero(); order + 1];
    let mut h = vec![T::zero(); order + 1];

    for m in 1..=order {
        let mpow: Vec<T> = (0..=max_exp)
            .map(|e| pow(m as i64, e))
            .collect::<Option<_>>()?;
        // Outer levels first, so that P_{j+1} still only holds m' < m when level j reads it.
        for j in 0..l {
            let spent_outer = j * m + tri(j);
            let inner_lo = tri(l - j - 1);
            if spent_outer + m + inner_lo > order {
                continue;
            }
            let bound = order - spent_outer;
            let xmax = bound - m;

            for v in x[..=xmax].iter_mut() {
                *v = T::zero();
            }
            if j == l - 1 {
                for t in levels[j].terms.iter().filter(|t| t.b == 0) {
                    let c = T::from_i64(t.coef).mul(&mpow[t.a as usize])?;
                    x[0].add_assign(&c)?;
                }
            } else {
                for t in &levels[j].terms {
                    let c = T::from_i64(t.coef).mul(&mpow[t.a as usize])?;
                    let bi = moments[j + 1].iter().position(|&b| b == t.b).unwrap();
                    let p = &prefix[j + 1][bi];
                    for k in inner_lo..=xmax {
                        if !p[k].is_zero() {
                            x[k].add_mul(&c, &p[k])?;
                        }
                    }
                }
            }

            for v in h[..=bound].iter_mut() {
                *v = T::zero();
            }
            let mut d = 1;
            while m * d + inner_lo <= bound {
                let w = &dweights[j][d];
                let md = m * d;
                for k in inner_lo..=bound - md {
                    if !x[k].is_zero() {
                        h[md + k].add_mul(w, &x[k])?;
                    }
                }
                d += 1;
            }

            for (bi, &b) in moments[j].iter().enumerate() {
                let mb = &mpow[b as usize];
                let p = &mut prefix[j][bi];
                for k in (m + inner_lo)..=bound {
                    if !h[k].is_zero() {
                        p[k].add_mul(mb, &h[k])?;
                    }
                }
            }
        }
    }
    out.clone_from(&prefix[0][0]);
    Some(out)
}

/// Exact integer chain sum: `i128` first, `BigInt` if that overflows.
pub(crate) fn chain_sum_exact(levels: &[Level], order: usize) -> Vec<BigInt> {
    match chain_sum::<i128>(levels, order) {
        Some(v) => v.into_iter().map(BigInt::from).collect(),
        None => chain_sum::<BigInt>(levels, order).expect("BigInt chain sums cannot overflow"),
    }
}

/// The bi-bracket level: `n^r d^{s-1}`.
pub(crate) fn bi_level(s: u32, r: u32) -> Level {
    Level {
        s,
        terms: vec![Monomial { coef: 1, a: r, b: 0 }],
    }
}

/// The zeta-bracket level: `(n_j - n_{j+1})^{r-1} d^{s-1}` expanded binomially.
pub(crate) fn zeta_level(s: u32, r: u32) -> Level {
    let e = r - 1;
    let terms = (0..=e)
        .map(|k| {
            let c = crate::arith::binom_u64(e as u64, k as u64) as i64;
            Monomial {
                coef: if k % 2 == 0 { c } else { -c },
                a: e - k,
                b: k,
            }
        })
        .collect();
    Level { s, terms }
}
