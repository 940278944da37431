use num_traits::One;

use super::products::stuffle;
use super::word::{Letter, Word, WordPoly, Xy, XyPoly, XyWord};
use crate::arith::{binom_int, Rational};
use crate::error::{Error, Result};

/// `z_{s_1,r_1}…z_{s_l,r_l} ↦ z_{r_l,s_l}…z_{r_1,s_1}`: reversal of the
/// `x/y` form with `x` and `y` swapped.
pub fn tau_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| Letter { s: l.r, r: l.s }).collect()
}

pub fn tau(p: &WordPoly) -> WordPoly {
    p.map_linear(|w| WordPoly::word(tau_word(w)))
}

fn int(c: num_bigint::BigUint) -> Rational {
    Rational::from_integer(c.into())
}

/// Rewrites a bi-bracket word (letters read through `[s; r-1]`) as a
/// combination of zeta words with the same value.
pub fn phi_word(w: &[Letter]) -> WordPoly {
    if w.len() <= 1 {
        return WordPoly::word(w.to_vec());
    }
    let mut out = WordPoly::zero();
    let mut prefix = Vec::with_capacity(w.len());
    phi_rec(w, 1, w[0].r, &mut prefix, Rational::one(), &mut out);
    out
}

// `carry` plays the role of j_{k-1} (with j_1 = r_1).
fn phi_rec(
    w: &[Letter],
    k: usize,
    carry: u32,
    prefix: &mut Word,
    coef: Rational,
    out: &mut WordPoly,
) {
    if k == w.len() {
        prefix.push(Letter { s: w[k - 1].s, r: carry });
        out.add_term(prefix.clone(), coef);
        prefix.pop();
        return;
    }
    let rk = w[k].r;
    for j in rk..=carry + rk - 1 {
        let b = binom_int((j - 1) as usize, (rk - 1) as i64);
        prefix.push(Letter {
            s: w[k - 1].s,
            r: carry + rk - j,
        });
        phi_rec(w, k + 1, j, prefix, &coef * int(b), out);
        prefix.pop();
    }
}

pub fn phi(p: &WordPoly) -> WordPoly {
    p.map_linear(phi_word)
}

/// Inverse of [`phi_word`]: a zeta word as a combination of bi-bracket words.
pub fn phi_inv_word(w: &[Letter]) -> WordPoly {
    if w.len() <= 1 {
        return WordPoly::word(w.to_vec());
    }
    let mut out = WordPoly::zero();
    let mut prefix = Vec::with_capacity(w.len());
    for i1 in 1..=w[0].r {
        let sign = if (w[0].r - i1).is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        prefix.push(Letter { s: w[0].s, r: i1 });
        phi_inv_rec(w, 1, w[0].r - i1, &mut prefix, sign, &mut out);
        prefix.pop();
    }
    out
}

// `carry` is r_{k-1} - i_{k-1}; the last level uses i_l = r_l without a sign.
fn phi_inv_rec(
    w: &[Letter],
    k: usize,
    carry: u32,
    prefix: &mut Word,
    coef: Rational,
    out: &mut WordPoly,
) {
    let last = k == w.len() - 1;
    let rk = w[k].r;
    let range = if last { rk..=rk } else { 1..=rk };
    for i in range {
        let b = binom_int((carry + i - 1) as usize, carry as i64);
        let mut c = &coef * int(b);
        if !last && (rk - i) % 2 == 1 {
            c = -c;
        }
        prefix.push(Letter {
            s: w[k].s,
            r: carry + i,
        });
        if last {
            out.add_term(prefix.clone(), c);
        } else {
            phi_inv_rec(w, k + 1, rk - i, prefix, c, out);
        }
        prefix.pop();
    }
}

pub fn phi_inv(p: &WordPoly) -> WordPoly {
    p.map_linear(phi_inv_word)
}

/// `φ⁻¹ τ φ`: an involution preserving the bi-bracket value of every word.
pub fn sigma(p: &WordPoly) -> WordPoly {
    phi_inv(&tau(&phi(p)))
}

/// The dual stuffle `σ(σw ⊛̄ σv)`, i.e. the stuffle transported by the
/// duality. Its bracket image is the product of the bracket images.
pub fn dual_stuffle(w: &WordPoly, v: &WordPoly) -> WordPoly {
    sigma(&stuffle(&sigma(w), &sigma(v)))
}

/// `φ⁻¹τ(τφw ⊛̄ τφv)`, the composition with the inner `φ`-conjugation
/// dropped. It agrees with [`dual_stuffle`] on many words but is not
/// multiplicative in general; kept for comparison.
pub fn dual_stuffle_unconjugated(w: &WordPoly, v: &WordPoly) -> WordPoly {
    phi_inv(&tau(&stuffle(&tau(&phi(w)), &tau(&phi(v)))))
}

/// `z_{s_1,r_1}…z_{s_l,r_l} y = z_{s_1,r_1}…z_{s_l,r_l+1}`.
pub fn absorb_y(w: &[Letter]) -> Result<Word> {
    let mut out = w.to_vec();
    match out.last_mut() {
        Some(l) => {
            l.r += 1;
            Ok(out)
        }
        None => Err(Error::InvalidArgument(
            "y cannot be absorbed by the empty word".into(),
        )),
    }
}

/// `z_{s_1}…z_{s_l} ↦ x^{s_1-1}y…x^{s_l-1}y`.
pub fn z_to_xy(p: &WordPoly) -> Result<XyPoly> {
    let mut out = XyPoly::zero();
    for (w, c) in p.terms() {
        let mut xy: XyWord = Vec::new();
        for l in w {
            if l.r != 1 {
                return Err(Error::Alphabet {
                    s: l.s,
                    r: l.r,
                    context: "the x/y encoding of classical words",
                });
            }
            xy.extend(std::iter::repeat_n(Xy::X, l.s as usize - 1));
            xy.push(Xy::Y);
        }
        out.add_term(xy, c.clone());
    }
    Ok(out)
}

/// Inverse of [`z_to_xy`]; every word must end in `y`.
pub fn xy_to_z(p: &XyPoly) -> Result<WordPoly> {
    let mut out = WordPoly::zero();
    for (w, c) in p.terms() {
        if w.last() == Some(&Xy::X) {
            return Err(Error::InvalidArgument(format!(
                "{} does not end in y",
                super::word::format_word(w)
            )));
        }
        let mut word = Vec::new();
        let mut xs = 0;
        for a in w {
            match a {
                Xy::X => xs += 1,
                Xy::Y => {
                    word.push(Letter::z(xs + 1));
                    xs = 0;
                }
            }
        }
        out.add_term(word, c.clone());
    }
    Ok(out)
}
