use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, format_rational, Rational};
use crate::error::{Error, Result};
use crate::series::{eulerian, QPolynomial};

/// Truncated Laurent series in `ε`: coefficients of `ε^{min_exp} .. ε^{max_exp}`,
/// with everything above `max_exp` unknown.
///
/// The leading coefficient is nonzero unless every known coefficient is zero,
/// in which case `coeffs` is all zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsLaurent {
    min_exp: i64,
    coeffs: Vec<Rational>,
}

impl EpsLaurent {
    /// `coeffs[k]` multiplies `ε^{min_exp + k}`; known through `ε^{min_exp + len - 1}`.
    pub fn new(min_exp: i64, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a Laurent series needs at least one coefficient");
        let max_exp = min_exp + coeffs.len() as i64 - 1;
        match coeffs.iter().position(|c| !c.is_zero()) {
            Some(lead) => EpsLaurent {
                min_exp: min_exp + lead as i64,
                coeffs: coeffs[lead..].to_vec(),
            },
            None => EpsLaurent {
                min_exp: max_exp,
                coeffs: vec![Rational::zero()],
            },
        }
    }

    /// A polynomial in `ε` times `ε^shift`, truncated after `ε^max_exp`.
    pub fn from_poly(p: &QPolynomial, shift: i64, max_exp: i64) -> Self {
        let len = (max_exp - shift + 1).max(1) as usize;
        let coeffs = (0..len).map(|k| p.coeff(k)).collect();
        Self::new(shift, coeffs)
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of `ε^e`; zero below `min_exp`.
    ///
    /// # Panics
    /// If `e > max_exp`, where the coefficient is unknown.
    pub fn coeff(&self, e: i64) -> Rational {
        assert!(e <= self.max_exp(), "coefficient of ε^{e} is beyond the truncation");
        if e < self.min_exp {
            Rational::zero()
        } else {
            self.coeffs[(e - self.min_exp) as usize].clone()
        }
    }

    /// Drops coefficients above `ε^max_exp`.
    pub fn truncate(&self, max_exp: i64) -> Self {
        let max_exp = max_exp.min(self.max_exp());
        if max_exp < self.min_exp {
            return Self::new(max_exp, vec![Rational::zero()]);
        }
        let len = (max_exp - self.min_exp + 1) as usize;
        Self::new(self.min_exp, self.coeffs[..len].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|a| a * c).collect())
    }

    fn combine(&self, rhs: &Self, sign: &Rational) -> Self {
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().min(rhs.max_exp());
        if hi < lo {
            return Self::new(hi, vec![Rational::zero()]);
        }
        let coeffs = (lo..=hi)
            .map(|e| self.coeff(e) + rhs.coeff(e) * sign)
            .collect();
        Self::new(lo, coeffs)
    }
}

impl Add for &EpsLaurent {
    type Output = EpsLaurent;
    fn add(self, rhs: &EpsLaurent) -> EpsLaurent {
        self.combine(rhs, &Rational::one())
    }
}

impl Sub for &EpsLaurent {
    type Output = EpsLaurent;
    fn sub(self, rhs: &EpsLaurent) -> EpsLaurent {
        self.combine(rhs, &-Rational::one())
    }
}

impl fmt::Display for EpsLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let e = self.min_exp + k as i64;
            if e == 0 {
                write!(f, "{}", format_rational(c))?;
            } else {
                write!(f, "({})ε^{}", format_rational(c), e)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(ε^{})", self.max_exp() + 1)
    }
}

/// Power-series inverse of a polynomial with nonzero constant term, `len` terms.
fn invert_poly(p: &QPolynomial, len: usize) -> Vec<Rational> {
    let inv0 = p.coeff(0).recip();
    let mut out = vec![Rational::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = inv0.clone();
    for m in 1..len {
        let mut acc = Rational::zero();
        for k in 1..=m.min(p.coeffs().len().saturating_sub(1)) {
            acc += p.coeff(k) * &out[m - k];
        }
        out[m] = -acc * &inv0;
    }
    out
}

/// Laurent expansion at `q = 1 - ε` of `P_{s-1}(q^n) / ((s-1)! (1 - q^n)^s)`,
/// through `ε^{eps_order}`.
///
/// The pole is factored out first: `1 - (1-ε)^n = ε D(ε)` with `D(0) = n`, so
/// the expansion is `ε^{-s} P_{s-1}((1-ε)^n) D(ε)^{-s} / (s-1)!`.
pub fn laurent_single_factor(s: u32, n: u32, eps_order: i64) -> Result<EpsLaurent> {
    if s < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "Laurent expansion needs s, n >= 1, got s = {s}, n = {n}"
        )));
    }
    let s_i = s as i64;
    let len = (eps_order + s_i + 1).max(1) as usize;
    let q_pow_n = QPolynomial::from_ints(&[1, -1]).pow(n);
    let numerator = eulerian(s)?.compose(&q_pow_n);
    // (1 - (1-ε)^n)/ε
    let one_minus = &QPolynomial::constant(Rational::one()) - &q_pow_n;
    let reduced = QPolynomial::new(one_minus.coeffs()[1..].to_vec());
    assert!(
        !reduced.coeff(0).is_zero(),
        "pole factorization left a zero leading term"
    );
    let inv = invert_poly(&reduced.pow(s), len);
    let norm = Rational::new(BigInt::one(), BigInt::from(factorial(s as usize - 1)));
    let mut coeffs = vec![Rational::zero(); len];
    for (i, a) in numerator.coeffs().iter().enumerate().take(len) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in inv.iter().enumerate().take(len - i) {
            coeffs[i + j] += a * b;
        }
    }
    let coeffs = coeffs.into_iter().map(|c| c * &norm).collect();
    Ok(EpsLaurent::new(-s_i, coeffs))
}

/// Coefficients `F_0(ε), F_1(ε), ...` of `x^k` in the bivariate series
/// `1 / (1 - (1 - e^{-εx})/ε)`, truncated in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeriesOverEps {
    coeffs: Vec<QPolynomial>,
}

impl XSeriesOverEps {
    /// Truncation order in `x`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `F_k(ε)`.
    pub fn coeff(&self, k: usize) -> &QPolynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[QPolynomial] {
        &self.coeffs
    }
}

/// `F_0 .. F_{max_k}` by geometric inversion.
///
/// With `G(x) = (1 - e^{-εx})/ε = Σ_{k≥1} (-1)^{k+1} ε^{k-1} x^k / k!`,
/// `F = 1/(1 - G)` satisfies `F_0 = 1` and `F_k = Σ_{j=1}^{k} G_j F_{k-j}`.
pub fn f_poly_series(max_k: usize) -> XSeriesOverEps {
    let g: Vec<QPolynomial> = (0..=max_k)
        .map(|k| {
            if k == 0 {
                return QPolynomial::zero();
            }
            let mag = Rational::new(BigInt::one(), BigInt::from(factorial(k)));
            let c = if k % 2 == 1 { mag } else { -mag };
            QPolynomial::constant(c).shift(k - 1)
        })
        .collect();
    let mut f: Vec<QPolynomial> = vec![QPolynomial::constant(Rational::one())];
    for k in 1..=max_k {
        let mut acc = QPolynomial::zero();
        for j in 1..=k {
            acc = &acc + &(&g[j] * &f[k - j]);
        }
        f.push(acc);
    }
    XSeriesOverEps { coeffs: f }
}
