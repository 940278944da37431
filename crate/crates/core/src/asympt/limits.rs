use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::mzv::{mzv_numeric, DEFAULT_MZV_CUTOFF};
use crate::arith::{factorial, rational_to_f64};
use crate::brackets::{eval_float, BracketIndex, Model, DEFAULT_TERM_BUDGET};
use crate::error::{Error, Result};
use crate::words::{
    dual_stuffle, eval_poly_float, format_word, mzv_shuffle, mzv_stuffle, stuffle, word_weight,
    xy_to_z, z_to_xy, EvalMap, Letter, WordPoly,
};

/// One row of a radial limit table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub eps: f64,
    /// `(1−q)^{Σs} · [s; r](q)` at `q = 1 − ε`.
    pub scaled: f64,
    /// `ζ(s − r) / Π r_i!`.
    pub target: f64,
    pub ratio: f64,
}

/// `s_1 > r_1 + 1` and `s_j ≥ r_j + 1` for `j ≥ 2`.
pub fn is_admissible_bi(idx: &BracketIndex) -> bool {
    let r = idx.bottom_as_bi();
    idx.depth() > 0
        && idx.s[0] > r[0] + 1
        && idx.s.iter().zip(&r).skip(1).all(|(&s, &r)| s > r)
}

/// `ζ(s_1 − r_1, …) / (r_1! ⋯ r_l!)`.
pub fn prop2_target(idx: &BracketIndex) -> Result<f64> {
    if idx.model == Model::Zeta {
        return Err(Error::InvalidArgument("radial limits are stated for bi-brackets".into()));
    }
    if !is_admissible_bi(idx) {
        return Err(Error::Inadmissible(format!(
            "{idx}: needs s_1 > r_1 + 1 and s_j ≥ r_j + 1"
        )));
    }
    let r = idx.bottom_as_bi();
    let diff: Vec<u32> = idx.s.iter().zip(&r).map(|(s, r)| s - r).collect();
    let z = mzv_numeric(&diff, DEFAULT_MZV_CUTOFF)?.value;
    let denom: f64 = r.iter().map(|&x| factorial(x as usize).to_f64().unwrap_or(f64::INFINITY)).product();
    Ok(z / denom)
}

/// `(1−q)^{Σs}·[s; r](q)` against its limit, for each `ε` with `q = 1 − ε`.
pub fn prop2_limit(idx: &BracketIndex, eps_list: &[f64]) -> Result<Vec<LimitRow>> {
    let target = prop2_target(idx)?;
    let total: u32 = idx.s.iter().sum();
    eps_list
        .iter()
        .map(|&eps| {
            let v = eval_float(idx, 1.0 - eps, DEFAULT_TERM_BUDGET)?;
            let scaled = eps.powi(total as i32) * v;
            Ok(LimitRow {
                eps,
                scaled,
                target,
                ratio: scaled / target,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    /// stuffle against the harmonic product of MZVs
    StuffleT,
    /// dual stuffle against the shuffle product of MZVs
    ShuffleS,
    /// the difference of the two
    MixedTS,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitKind::StuffleT => "stuffle_T",
            LimitKind::ShuffleS => "shuffle_S",
            LimitKind::MixedTS => "mixed_TS",
        })
    }
}

impl FromStr for LimitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "stuffle_t" | "t" | "stuffle" => Ok(LimitKind::StuffleT),
            "shuffle_s" | "s" | "shuffle" => Ok(LimitKind::ShuffleS),
            "mixed_ts" | "ts" | "mixed" => Ok(LimitKind::MixedTS),
            _ => Err(Error::Parse {
                what: "limit kind",
                detail: format!("unknown kind {s:?} (expected stuffle_T, shuffle_S or mixed_TS)"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitCheck {
    pub kind: LimitKind,
    pub eps: f64,
    /// `(1−q)^{|w|+|v|}` times the bracket value of the word product.
    pub lhs: f64,
    /// The MZV combination evaluated termwise.
    pub rhs: f64,
    /// The word product whose bracket value is `lhs`.
    pub bracket_word: String,
    /// The MZV word combination behind `rhs`.
    pub mzv_word: String,
}

impl LimitCheck {
    pub fn relative_error(&self) -> f64 {
        ((self.lhs - self.rhs) / self.rhs).abs()
    }
}

fn require_classical(w: &[Letter], what: &str) -> Result<()> {
    match w.iter().find(|l| l.r != 1) {
        Some(l) => Err(Error::Alphabet {
            s: l.s,
            r: l.r,
            context: if what == "w" { "limit checks (w)" } else { "limit checks (v)" },
        }),
        None => Ok(()),
    }
}

fn require_admissible(w: &[Letter]) -> Result<()> {
    match w.first() {
        Some(l) if l.s >= 2 => Ok(()),
        _ => Err(Error::Inadmissible(format!(
            "{} must start with z(s,1), s ≥ 2",
            format_word(w)
        ))),
    }
}

fn mzv_of(p: &WordPoly) -> Result<f64> {
    let mut total = 0.0;
    for (w, c) in p.terms() {
        let row: Vec<u32> = w.iter().map(|l| l.s).collect();
        if row.first().is_some_and(|&s| s < 2) {
            return Err(Error::Inadmissible(format!(
                "the term {} of {p} has no classical value",
                format_word(w)
            )));
        }
        total += rational_to_f64(c) * mzv_numeric(&row, DEFAULT_MZV_CUTOFF)?.value;
    }
    Ok(total)
}

/// Compares `(1−q)^{|w|+|v|}·[w ∘ v]` at `q = 1 − ε` with the MZV of the
/// matching classical product.
pub fn limit_theorem_check(kind: LimitKind, w: &[Letter], v: &[Letter], eps: f64) -> Result<LimitCheck> {
    require_classical(w, "w")?;
    require_classical(v, "v")?;
    if kind != LimitKind::MixedTS {
        require_admissible(w)?;
        require_admissible(v)?;
    }
    let (pw, pv) = (WordPoly::word(w.to_vec()), WordPoly::word(v.to_vec()));
    let harmonic = || mzv_stuffle(&pw, &pv);
    let shuffle = || -> Result<WordPoly> { xy_to_z(&mzv_shuffle(&z_to_xy(&pw)?, &z_to_xy(&pv)?)) };
    let (bracket, classical) = match kind {
        LimitKind::StuffleT => (stuffle(&pw, &pv), harmonic()?),
        LimitKind::ShuffleS => (dual_stuffle(&pw, &pv), shuffle()?),
        LimitKind::MixedTS => (
            &stuffle(&pw, &pv) - &dual_stuffle(&pw, &pv),
            &harmonic()? - &shuffle()?,
        ),
    };
    let rhs = mzv_of(&classical)?;
    let weight = word_weight(w) + word_weight(v);
    let value = eval_poly_float(&bracket, EvalMap::Bracket, 1.0 - eps, DEFAULT_TERM_BUDGET)?;
    Ok(LimitCheck {
        kind,
        eps,
        lhs: eps.powi(weight as i32) * value,
        rhs,
        bracket_word: bracket.to_string(),
        mzv_word: classical.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(s: &[u32], r: &[u32]) -> BracketIndex {
        BracketIndex::bi(s, r).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible_bi(&bi(&[2], &[0])));
        assert!(is_admissible_bi(&bi(&[3], &[1])));
        assert!(!is_admissible_bi(&bi(&[2], &[1])));
        assert!(is_admissible_bi(&bi(&[2, 1], &[0, 0])));
        assert!(!is_admissible_bi(&bi(&[2, 1], &[0, 1])));
        assert!(prop2_limit(&bi(&[1], &[0]), &[0.1]).is_err());
    }

    #[test]
    fn first_order_convergence() {
        for idx in [bi(&[2], &[0]), bi(&[3], &[1]), bi(&[3], &[0])] {
            let rows = prop2_limit(&idx, &[0.1, 0.05, 0.02]).unwrap();
            for r in &rows {
                assert!((r.ratio - 1.0).abs() <= 2.0 * r.eps, "{idx}: {r:?}");
            }
            assert!((rows[0].ratio - 1.0).abs() > (rows[1].ratio - 1.0).abs());
        }
    }

    #[test]
    fn targets() {
        // direct double sum over n1 > n2, larger index carrying the exponent 3
        let direct: f64 = (2..20_000u32)
            .map(|n| (1..n).map(|m| 1.0 / (m as f64).powi(2)).sum::<f64>() / (n as f64).powi(3))
            .sum();
        let t = prop2_target(&bi(&[3, 2], &[0, 0])).unwrap();
        assert!((t - direct).abs() < 1e-6, "{t} vs {direct}");
        assert!((t - 0.22881).abs() < 1e-4);
        let t = prop2_target(&bi(&[3], &[1])).unwrap();
        assert!((t - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-5);
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("stuffle_T".parse::<LimitKind>().unwrap(), LimitKind::StuffleT);
        assert_eq!("mixed-ts".parse::<LimitKind>().unwrap(), LimitKind::MixedTS);
        assert!("other".parse::<LimitKind>().is_err());
    }

    #[test]
    fn classical_sides() {
        let z2 = [Letter::z(2)];
        let t = limit_theorem_check(LimitKind::StuffleT, &z2, &z2, 0.05).unwrap();
        assert_eq!(t.mzv_word, "2·z(2,1)z(2,1) + z(4,1)");
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((t.rhs - zeta2 * zeta2).abs() < 1e-4);
        let s = limit_theorem_check(LimitKind::ShuffleS, &z2, &z2, 0.05).unwrap();
        assert_eq!(s.mzv_word, "2·z(2,1)z(2,1) + 4·z(3,1)z(1,1)");
        assert!((s.rhs - zeta2 * zeta2).abs() < 1e-4);
        let m = limit_theorem_check(LimitKind::MixedTS, &[Letter::z(1)], &[Letter::z(1)], 0.05).unwrap();
        assert_eq!(m.mzv_word, "z(2,1)");
        assert_eq!(m.bracket_word, "−z(1,2) + z(2,1)");
    }

    #[test]
    fn rejects_bad_inputs() {
        let z1 = [Letter::z(1)];
        let z2 = [Letter::z(2)];
        assert!(matches!(
            limit_theorem_check(LimitKind::StuffleT, &z1, &z2, 0.05),
            Err(Error::Inadmissible(_))
        ));
        let bad = [Letter::new(2, 2).unwrap()];
        assert!(matches!(
            limit_theorem_check(LimitKind::ShuffleS, &bad, &z2, 0.05),
            Err(Error::Alphabet { .. })
        ));
    }
}
