use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, format_rational, Rational};
use crate::error::{Error, Result};
use crate::series::QSeries;

/// Exact univariate polynomial with rational coefficients, lowest degree first.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &QPolynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(QPolynomial::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// The series `self(q^n)` truncated at `order`.
    pub fn at_power(&self, n: usize, order: usize) -> QSeries {
        let mut s = vec![Rational::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * n <= order {
                s[k * n] = c.clone();
            }
        }
        QSeries::from_coeffs(s)
    }

    /// Renders with the variable name `var`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let c = format_rational(c);
            parts.push(match k {
                0 => c,
                1 => format!("({c}){var}"),
                _ => format!("({c}){var}^{k}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPolynomial::new(c)
    }
}

/// The numerator `P_{s-1}(q)` in `P_{s-1}(q)/(1-q)^s = Σ_{d≥1} d^{s-1} q^d`.
///
/// Obtained by applying `q d/dq` to `q/(1-q)` a total of `s-1` times while
/// keeping the denominator `(1-q)^k` explicit:
/// `q d/dq [N/(1-q)^k] = (q N' (1-q) + k q N) / (1-q)^{k+1}`.
pub fn eulerian(s: u32) -> Result<QPolynomial> {
    if s < 1 {
        return Err(Error::InvalidArgument(format!(
            "Eulerian numerator needs s >= 1, got {s}"
        )));
    }
    let q = QPolynomial::from_ints(&[0, 1]);
    let one_minus_q = QPolynomial::from_ints(&[1, -1]);
    let mut num = q.clone();
    for k in 1..s {
        let k = Rational::from_integer(BigInt::from(k));
        let left = &(&q * &num.derivative()) * &one_minus_q;
        let right = (&q * &num).scale(&k);
        num = &left + &right;
    }
    Ok(num)
}

/// `Σ_{d≥1, nd≤order} d^{s-1}/(s-1)! q^{nd}`, the expansion of
/// `P_{s-1}(q^n) / ((s-1)! (1-q^n)^s)`.
pub fn single_factor(s: u32, n: usize, order: usize) -> Result<QSeries> {
    if s < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "single factor needs s, n >= 1, got s = {s}, n = {n}"
        )));
    }
    let mut num = vec![BigInt::zero(); order + 1];
    let mut d = 1usize;
    while n * d <= order {
        num[n * d] = BigInt::from(d).pow(s - 1);
        d += 1;
    }
    Ok(QSeries::from_integers(
        &num,
        &BigInt::from(factorial(s as usize - 1)),
    ))
}
