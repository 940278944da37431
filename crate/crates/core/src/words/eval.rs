use std::fmt;
use std::str::FromStr;

use super::word::{Letter, Word, WordPoly};
use crate::brackets::{enumerate_indices, eval_float, BracketIndex, ExpansionCache, Model};
use crate::error::{Error, Result};
use crate::series::QSeries;

/// How a letter `z_{s,r}` is read as a `q`-series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvalMap {
    /// `z_{s_1,r_1}…z_{s_l,r_l} ↦ [s_1,…,s_l; r_1-1,…,r_l-1]`
    Bracket,
    /// `z_{s_1,r_1}…z_{s_l,r_l} ↦ ζ[s_1,…,s_l; r_1,…,r_l]`
    Zeta,
}

impl fmt::Display for EvalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMap::Bracket => "bracket",
            EvalMap::Zeta => "zeta",
        })
    }
}

impl FromStr for EvalMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bracket" | "bi" => Ok(EvalMap::Bracket),
            "zeta" => Ok(EvalMap::Zeta),
            _ => Err(Error::Parse {
                what: "evaluation map",
                detail: format!("unknown map {s:?} (expected bracket or zeta)"),
            }),
        }
    }
}

/// The bracket a single word evaluates to.
pub fn word_index(w: &[Letter], map: EvalMap) -> BracketIndex {
    let s: Vec<u32> = w.iter().map(|l| l.s).collect();
    let (model, r): (Model, Vec<u32>) = match map {
        EvalMap::Bracket => (Model::Bi, w.iter().map(|l| l.r - 1).collect()),
        EvalMap::Zeta => (Model::Zeta, w.iter().map(|l| l.r).collect()),
    };
    BracketIndex::new(model, s, r).expect("letters always give valid indices")
}

/// The word of a zeta index, inverse to [`word_index`] with [`EvalMap::Zeta`].
pub fn index_word(idx: &BracketIndex) -> Word {
    let r = match idx.model {
        Model::Zeta => idx.r.clone(),
        _ => idx.bottom_as_bi().iter().map(|r| r + 1).collect(),
    };
    idx.s.iter().zip(r).map(|(&s, r)| Letter { s, r }).collect()
}

/// Every word of weight ≤ `max_weight`, graded.
pub fn enumerate_words(max_weight: u32) -> Vec<Word> {
    enumerate_indices(Model::Zeta, max_weight).iter().map(index_word).collect()
}

/// Exact `q`-expansion of a word combination through `q^order`.
pub fn eval_poly(
    p: &WordPoly,
    map: EvalMap,
    order: usize,
    cache: &mut ExpansionCache,
) -> QSeries {
    let mut total = QSeries::zero(order);
    for (w, c) in p.terms() {
        let s = cache.get_or_compute(&word_index(w, map), order);
        total = &total + &s.scale(c);
    }
    total
}

/// Float value of a word combination at a real `0 < q < 1`.
pub fn eval_poly_float(p: &WordPoly, map: EvalMap, q: f64, term_budget: usize) -> Result<f64> {
    let mut total = 0.0;
    for (w, c) in p.terms() {
        let v = eval_float(&word_index(w, map), q, term_budget)?;
        total += crate::arith::rational_to_f64(c) * v;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::brackets::{eval_bi, eval_mono};
    use crate::words::maps::{dual_stuffle, phi, tau};
    use crate::words::products::stuffle;
    use crate::words::word::parse_word;

    const N: usize = 40;

    fn w(text: &str) -> WordPoly {
        WordPoly::word(parse_word(text).unwrap())
    }

    #[test]
    fn word_to_index() {
        let w = parse_word("z(2,1)z(1,3)").unwrap();
        assert_eq!(word_index(&w, EvalMap::Bracket), BracketIndex::bi(&[2, 1], &[0, 2]).unwrap());
        assert_eq!(word_index(&w, EvalMap::Zeta), BracketIndex::zeta(&[2, 1], &[1, 3]).unwrap());
        assert_eq!(word_index(&[], EvalMap::Zeta).depth(), 0);
        for idx in enumerate_indices(Model::Zeta, 4) {
            assert_eq!(word_index(&index_word(&idx), EvalMap::Zeta), idx);
        }
        assert_eq!(index_word(&BracketIndex::bi(&[2, 1], &[0, 2]).unwrap()), w);
        assert_eq!(enumerate_words(4).len(), 34);
    }

    #[test]
    fn stuffle_of_z11_with_itself() {
        let mut cache = ExpansionCache::in_memory();
        let p = stuffle(&w("z(1,1)"), &w("z(1,1)"));
        let lhs = eval_poly(&p, EvalMap::Bracket, N, &mut cache);
        let one = eval_mono(&[1], N).unwrap();
        assert_eq!(lhs, &one * &one);
        let by_hand = &(&eval_mono(&[1, 1], N).unwrap().scale(&rat(2, 1)) + &eval_mono(&[2], N).unwrap())
            - &eval_mono(&[1], N).unwrap();
        assert_eq!(lhs, by_hand);
    }

    #[test]
    fn phi_preserves_value() {
        let mut cache = ExpansionCache::in_memory();
        for text in ["z(1,2)z(1,2)", "z(2,2)z(1,3)", "z(1,2)z(2,1)z(1,2)"] {
            let p = w(text);
            assert_eq!(
                eval_poly(&p, EvalMap::Bracket, N, &mut cache),
                eval_poly(&phi(&p), EvalMap::Zeta, N, &mut cache),
                "{text}"
            );
        }
    }

    #[test]
    fn tau_is_duality_on_zeta_values() {
        let mut cache = ExpansionCache::in_memory();
        let p = w("z(2,1)z(1,3)");
        assert_eq!(
            eval_poly(&p, EvalMap::Zeta, N, &mut cache),
            eval_poly(&tau(&p), EvalMap::Zeta, N, &mut cache)
        );
    }

    #[test]
    fn both_products_are_multiplicative() {
        let mut cache = ExpansionCache::in_memory();
        let pairs = [("z(1,2)", "z(2,1)"), ("z(2,1)", "z(2,1)"), ("z(1,1)z(1,2)", "z(1,3)")];
        for (a, b) in pairs {
            let (a, b) = (w(a), w(b));
            let want = &eval_poly(&a, EvalMap::Bracket, N, &mut cache)
                * &eval_poly(&b, EvalMap::Bracket, N, &mut cache);
            for prod in [stuffle(&a, &b), dual_stuffle(&a, &b)] {
                assert_eq!(eval_poly(&prod, EvalMap::Bracket, N, &mut cache), want);
            }
        }
    }

    #[test]
    fn unconjugated_variant_is_not_multiplicative() {
        let mut cache = ExpansionCache::in_memory();
        let a = w("z(2,1)");
        let sq = &eval_poly(&a, EvalMap::Bracket, N, &mut cache) * &eval_poly(&a, EvalMap::Bracket, N, &mut cache);
        let p = crate::words::maps::dual_stuffle_unconjugated(&a, &a);
        assert_ne!(eval_poly(&p, EvalMap::Bracket, N, &mut cache), sq);
    }

    #[test]
    fn float_matches_exact_sum() {
        let p = &w("z(1,2)") - &w("z(2,1)").scale(&rat(1, 3));
        let got = eval_poly_float(&p, EvalMap::Bracket, 0.2, 10_000).unwrap();
        let exact = &eval_bi(&[1], &[1], 60).unwrap() - &eval_bi(&[2], &[0], 60).unwrap().scale(&rat(1, 3));
        let want: f64 = (0..=60)
            .map(|k| crate::arith::rational_to_f64(exact.coeff(k)) * 0.2f64.powi(k as i32))
            .sum();
        assert!((got - want).abs() < 1e-13);
    }

    #[test]
    fn parses_map_names() {
        assert_eq!("zeta".parse::<EvalMap>().unwrap(), EvalMap::Zeta);
        assert_eq!("Bracket".parse::<EvalMap>().unwrap(), EvalMap::Bracket);
        assert!("mzv".parse::<EvalMap>().is_err());
    }
}
