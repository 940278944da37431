use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::arith::{lambda_seq, rat, Rational};
use crate::error::{Error, Result};
use crate::series::{f_poly_series, laurent_single_factor, EpsLaurent, QPolynomial};

/// `(1/(n^s ε^s))((1−ε)F_{s−1}(ε) + λ̂_s ε^s) − λ̂_s` through `ε^{eps_order}`.
pub fn lemma1_rhs(n: u32, s: u32, eps_order: i64) -> Result<EpsLaurent> {
    if n < 1 || s < 1 {
        return Err(Error::InvalidArgument(format!("need n, s >= 1, got n = {n}, s = {s}")));
    }
    let f = f_poly_series(s as usize - 1);
    let hat = lambda_seq(s as usize).lambda_hat[s as usize].clone();
    let one_minus = QPolynomial::from_ints(&[1, -1]);
    let inner = &(&one_minus * f.coeff(s as usize - 1))
        + &QPolynomial::constant(hat.clone()).shift(s as usize);
    let ns = Rational::from_integer(Pow::pow(BigInt::from(n), s));
    let main = EpsLaurent::from_poly(&inner.scale(&ns.recip()), -(s as i64), eps_order);
    let constant = EpsLaurent::from_poly(&QPolynomial::constant(-hat), 0, eps_order);
    Ok(&main + &constant)
}

/// Exact expansion of `P_{s−1}(q^n)/((s−1)!(1−q^n)^s)` at `q = 1−ε` minus
/// [`lemma1_rhs`], through `ε^{eps_order}`. The statement holds when every
/// coefficient through `ε^0` vanishes.
pub fn lemma1_check(n: u32, s: u32, eps_order: i64) -> Result<EpsLaurent> {
    let lhs = laurent_single_factor(s, n, eps_order)?;
    Ok(&lhs - &lemma1_rhs(n, s, eps_order)?)
}

/// Whether the residual vanishes through `ε^0`.
pub fn lemma1_holds(n: u32, s: u32) -> Result<bool> {
    Ok(lemma1_check(n, s, 0)?.is_zero())
}

/// The shifted form `c_s + P_{s−1}(q^n)/((s−1)!(1−q^n)^s) = n^{−s}·D_s(ε) + O(ε)`
/// for `s = 1…4`, as `(c_s, D_s)` with `D_s` known through `ε^0`.
pub fn displayed_expansion(s: u32) -> Option<(Rational, EpsLaurent)> {
    let (c, d): (Rational, Vec<Rational>) = match s {
        1 => (rat(1, 2), vec![rat(1, 1), rat(-1, 2)]),
        2 => (rat(1, 12), vec![rat(1, 1), rat(-1, 1), rat(1, 12)]),
        3 => (rat(0, 1), vec![rat(1, 1), rat(-3, 2), rat(1, 2), rat(0, 1)]),
        4 => (
            rat(-1, 720),
            vec![rat(1, 1), rat(-2, 1), rat(7, 6), rat(-1, 6), rat(-1, 720)],
        ),
        _ => return None,
    };
    Some((c, EpsLaurent::new(-(s as i64), d)))
}

/// `c_s + LHS − n^{−s} D_s` through `ε^0` for one of the shifted forms.
pub fn displayed_residual(n: u32, s: u32) -> Result<EpsLaurent> {
    let (c, d) = displayed_expansion(s)
        .ok_or_else(|| Error::InvalidArgument(format!("no shifted form stored for s = {s}")))?;
    let lhs = laurent_single_factor(s, n, 0)?;
    let shift = EpsLaurent::from_poly(&QPolynomial::constant(c), 0, 0);
    let ns = Rational::from_integer(Pow::pow(BigInt::from(n), s));
    Ok(&(&lhs + &shift) - &d.scale(&(Rational::one() / ns)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_vanishes() {
        for n in 1..=6 {
            for s in 1..=6 {
                assert!(lemma1_holds(n, s).unwrap(), "n = {n}, s = {s}");
            }
        }
    }

    #[test]
    fn residual_is_nonzero_beyond_the_constant_term() {
        // the O(ε) remainder is genuinely there
        let r = lemma1_check(2, 1, 1).unwrap();
        assert_eq!(r.coeff(0), rat(0, 1));
        assert_ne!(r.coeff(1), rat(0, 1));
    }

    #[test]
    fn small_cases_by_hand() {
        let lhs = laurent_single_factor(1, 1, 0).unwrap();
        assert_eq!(lhs.coeff(-1), rat(1, 1));
        assert_eq!(lhs.coeff(0), rat(-1, 1));
        let lhs = laurent_single_factor(4, 1, 0).unwrap();
        let want = [rat(1, 1), rat(-2, 1), rat(7, 6), rat(-1, 6), rat(0, 1)];
        for (e, w) in (-4..=0).zip(want) {
            assert_eq!(lhs.coeff(e), w, "ε^{e}");
        }
    }

    #[test]
    fn shifted_forms() {
        for s in 1..=4 {
            for n in 1..=3 {
                assert!(displayed_residual(n, s).unwrap().is_zero(), "s = {s}, n = {n}");
            }
        }
        assert!(displayed_expansion(5).is_none());
    }
}
