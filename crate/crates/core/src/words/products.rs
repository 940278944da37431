use num_traits::One;

use super::word::{Letter, Poly, Symbol, WordPoly, XyPoly};
use crate::arith::{binom, lambda, Rational};
use crate::error::{Error, Result};

/// The commutative letter product
/// `z_{s1,r1} ⋄ z_{s2,r2} = C(r1+r2-2, r1-1) (z_{s1+s2,R} + Σ_j … λ_{s1+s2-j} z_{j,R})`
/// with `R = r1 + r2 - 1`.
pub fn diamond(a: &Letter, b: &Letter) -> WordPoly {
    let (s1, r1, s2, r2) = (a.s as usize, a.r as usize, b.s as usize, b.r as usize);
    let big_r = (r1 + r2 - 1) as u32;
    let outer = binom(r1 + r2 - 2, r1 as i64 - 1);
    let sign = |e: usize| if e.is_multiple_of(2) { Rational::one() } else { -Rational::one() };

    let mut out = WordPoly::zero();
    out.add_term(vec![Letter { s: (s1 + s2) as u32, r: big_r }], outer.clone());
    for j in 1..=s1 {
        let c = sign(s2 - 1) * binom(s1 + s2 - j - 1, (s1 - j) as i64) * lambda(s1 + s2 - j);
        out.add_term(vec![Letter { s: j as u32, r: big_r }], c * &outer);
    }
    for j in 1..=s2 {
        let c = sign(s1 - 1) * binom(s1 + s2 - j - 1, (s2 - j) as i64) * lambda(s1 + s2 - j);
        out.add_term(vec![Letter { s: j as u32, r: big_r }], c * &outer);
    }
    out
}

/// `aw ∘ bv = a(w ∘ bv) + b(aw ∘ v) + (a·b)(w ∘ v)` on one pair of words,
/// tabulated over all suffix pairs. `letter_product` returning zero gives
/// the plain shuffle.
fn quasi_shuffle_words<L: Symbol>(
    w: &[L],
    v: &[L],
    letter_product: &dyn Fn(&L, &L) -> Poly<L>,
) -> Poly<L> {
    let (n, m) = (w.len(), v.len());
    // table[i][j] = w[i..] ∘ v[j..]
    let mut table: Vec<Vec<Poly<L>>> = vec![vec![Poly::zero(); m + 1]; n + 1];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            table[i][j] = if i == n {
                Poly::word(v[j..].to_vec())
            } else if j == m {
                Poly::word(w[i..].to_vec())
            } else {
                let mut acc = table[i + 1][j].prepend(&w[i]);
                acc.add_scaled(&table[i][j + 1].prepend(&v[j]), &Rational::one());
                let ab = letter_product(&w[i], &v[j]);
                for (c, k) in ab.terms() {
                    // single-letter terms only
                    acc.add_scaled(&table[i + 1][j + 1].prepend(&c[0]), k);
                }
                acc
            };
        }
    }
    std::mem::take(&mut table[0][0])
}

fn bilinear<L: Symbol>(
    p: &Poly<L>,
    q: &Poly<L>,
    letter_product: &dyn Fn(&L, &L) -> Poly<L>,
) -> Poly<L> {
    let mut out = Poly::zero();
    for (a, ca) in p.terms() {
        for (b, cb) in q.terms() {
            out.add_scaled(&quasi_shuffle_words(a, b, letter_product), &(ca * cb));
        }
    }
    out
}

/// The stuffle product built on [`diamond`], mirroring the product of brackets.
pub fn stuffle(w: &WordPoly, v: &WordPoly) -> WordPoly {
    bilinear(w, v, &diamond)
}

fn require_z_prime(p: &WordPoly, context: &'static str) -> Result<()> {
    for (w, _) in p.terms() {
        if let Some(l) = w.iter().find(|l| l.r != 1) {
            return Err(Error::Alphabet {
                s: l.s,
                r: l.r,
                context,
            });
        }
    }
    Ok(())
}

/// The classical harmonic product on words in `z_s = z_{s,1}`:
/// `z_a w * z_b v = z_a(w * z_b v) + z_b(z_a w * v) + z_{a+b}(w * v)`.
pub fn mzv_stuffle(w: &WordPoly, v: &WordPoly) -> Result<WordPoly> {
    require_z_prime(w, "the classical stuffle")?;
    require_z_prime(v, "the classical stuffle")?;
    Ok(bilinear(w, v, &|a: &Letter, b: &Letter| {
        WordPoly::word(vec![Letter::z(a.s + b.s)])
    }))
}

/// The shuffle product of binary `x`/`y` words.
pub fn mzv_shuffle(w: &XyPoly, v: &XyPoly) -> XyPoly {
    bilinear(w, v, &|_, _| XyPoly::zero())
}
