use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{denominator_lcm, format_rational, Rational};

/// Power series in `q` with rational coefficients, known through `q^order`.
///
/// Equality compares coefficients only up to the smaller of the two orders;
/// nothing beyond a series' order is ever assumed to be zero.
#[derive(Clone, Debug)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rational::one(), 0, order)
    }

    /// `c q^k`, truncated at `order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Takes `coeffs[k]` as the coefficient of `q^k`; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the q^0 coefficient");
        QSeries { coeffs }
    }

    /// Builds `numerators[k] / denominator` for each `k`.
    pub fn from_integers(numerators: &[BigInt], denominator: &BigInt) -> Self {
        Self::from_coeffs(
            numerators
                .iter()
                .map(|n| Rational::new(n.clone(), denominator.clone()))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops every coefficient above `order`.
    ///
    /// # Panics
    /// If `order` exceeds the current order; a series cannot be extended.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot extend a series of order {} to {}",
            self.order(),
            order
        );
        QSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Common denominator and integer numerators: `self = numerators / denominator`.
    pub fn to_integer_row(&self) -> (Vec<BigInt>, BigInt) {
        let l = denominator_lcm(&self.coeffs);
        let row = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        (row, l)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Option<Self> {
        if self.coeffs[0].is_zero() {
            return None;
        }
        let n = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = inv0.clone();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[m - k];
                }
            }
            out[m] = -acc * &inv0;
        }
        Some(QSeries { coeffs: out })
    }

    pub fn div(&self, other: &QSeries) -> Option<Self> {
        Some(self * &other.inverse()?)
    }

    /// Exact agreement on `q^0 .. q^{min(order)}`.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    /// Comma-separated coefficient list, e.g. `0, 1, 4, 6, 12`.
    pub fn coefficient_string(&self) -> String {
        self.coeffs
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

impl fmt::Display for QSeries {
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
            match k {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})q", format_rational(c))?,
                _ => write!(f, "({})q^{}", format_rational(c), k)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    /// Truncated Cauchy product, carried out on integer numerators.
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let (a, da) = self.truncate(n).to_integer_row();
        let (b, db) = rhs.truncate(n).to_integer_row();
        let mut c = vec![BigInt::zero(); n + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b[..=n - i].iter().enumerate() {
                if !bj.is_zero() {
                    c[i + j] += ai * bj;
                }
            }
        }
        QSeries::from_integers(&c, &(da * db))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
