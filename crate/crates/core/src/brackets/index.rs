use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which family of q-series an index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// `[s_1,…,s_l]`, generating functions of multiple divisor sums.
    Mono,
    /// `[s_1,…,s_l; r_1,…,r_l]` with `r_i ≥ 0`.
    Bi,
    /// `ζ[s_1,…,s_l; r_1,…,r_l]` with `r_i ≥ 1`.
    Zeta,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Mono => "mono",
            Model::Bi => "bi",
            Model::Zeta => "zeta",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mono" => Ok(Model::Mono),
            "bi" => Ok(Model::Bi),
            "zeta" => Ok(Model::Zeta),
            _ => Err(Error::Parse {
                what: "model",
                detail: format!("expected mono, bi or zeta, got {s:?}"),
            }),
        }
    }
}

/// One bracket: a model tag with its top (`s`) and bottom (`r`) rows.
/// Mono-brackets carry an empty bottom row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BracketIndex {
    pub model: Model,
    pub s: Vec<u32>,
    pub r: Vec<u32>,
}

impl BracketIndex {
    pub fn new(model: Model, s: Vec<u32>, r: Vec<u32>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidIndex(msg));
        if let Some(&x) = s.iter().find(|&&x| x < 1) {
            return bad(format!("top entries must be >= 1, found {x}"));
        }
        match model {
            Model::Mono => {
                if !r.is_empty() {
                    return bad("mono-brackets have no bottom row".into());
                }
            }
            Model::Bi | Model::Zeta => {
                if r.len() != s.len() {
                    return bad(format!(
                        "rows have different lengths ({} and {})",
                        s.len(),
                        r.len()
                    ));
                }
                if model == Model::Zeta {
                    if let Some(&x) = r.iter().find(|&&x| x < 1) {
                        return bad(format!("zeta bottom entries must be >= 1, found {x}"));
                    }
                }
            }
        }
        Ok(BracketIndex { model, s, r })
    }

    pub fn mono(s: &[u32]) -> Result<Self> {
        Self::new(Model::Mono, s.to_vec(), Vec::new())
    }

    pub fn bi(s: &[u32], r: &[u32]) -> Result<Self> {
        Self::new(Model::Bi, s.to_vec(), r.to_vec())
    }

    pub fn zeta(s: &[u32], r: &[u32]) -> Result<Self> {
        Self::new(Model::Zeta, s.to_vec(), r.to_vec())
    }

    pub fn empty(model: Model) -> Self {
        BracketIndex {
            model,
            s: Vec::new(),
            r: Vec::new(),
        }
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    /// `Σ s_i` (mono), `Σ (s_i + r_i)` (bi), `Σ (s_i + r_i - 1)` (zeta).
    pub fn weight(&self) -> u32 {
        let top: u32 = self.s.iter().sum();
        let bottom: u32 = self.r.iter().sum();
        match self.model {
            Model::Mono => top,
            Model::Bi => top + bottom,
            Model::Zeta => top + bottom - self.depth() as u32,
        }
    }

    /// Bottom row with the model default filled in for mono-brackets
    /// (all zeros, i.e. the bi-bracket convention).
    pub fn bottom_as_bi(&self) -> Vec<u32> {
        match self.model {
            Model::Mono => vec![0; self.depth()],
            _ => self.r.clone(),
        }
    }

    /// The partition dual `ζ[r_l,…,r_1; s_l,…,s_1]` of a zeta index.
    pub fn dual(&self) -> Option<Self> {
        if self.model != Model::Zeta {
            return None;
        }
        Some(BracketIndex {
            model: Model::Zeta,
            s: self.r.iter().rev().copied().collect(),
            r: self.s.iter().rev().copied().collect(),
        })
    }

    /// Parses `"s1,s2,…;r1,r2,…"`. A missing bottom row takes the model
    /// default: zeros for bi-brackets, ones for zeta brackets.
    pub fn parse(model: Model, text: &str) -> Result<Self> {
        fn row(part: &str) -> Result<Vec<u32>> {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| {
                    x.trim().parse::<u32>().map_err(|_| Error::Parse {
                        what: "bracket index",
                        detail: format!("not a nonnegative integer: {x:?}"),
                    })
                })
                .collect()
        }
        let text = text.trim();
        let text = text
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(text);
        let (top, bottom) = match text.split_once(';') {
            Some((a, b)) => (row(a)?, Some(row(b)?)),
            None => (row(text)?, None),
        };
        let bottom = match (model, bottom) {
            (Model::Mono, None) => Vec::new(),
            (Model::Mono, Some(b)) if b.is_empty() => b,
            (Model::Mono, Some(_)) => {
                return Err(Error::InvalidIndex(
                    "mono-brackets take no bottom row".into(),
                ))
            }
            (Model::Bi, None) => vec![0; top.len()],
            (Model::Zeta, None) => vec![1; top.len()],
            (_, Some(b)) => b,
        };
        Self::new(model, top, bottom)
    }

    /// `s1,s2;r1,r2` (mono: `s1,s2`).
    pub fn rows_string(&self) -> String {
        let join = |v: &[u32]| {
            v.iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self.model {
            Model::Mono => join(&self.s),
            _ => format!("{};{}", join(&self.s), join(&self.r)),
        }
    }
}

impl fmt::Display for BracketIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = if self.model == Model::Zeta { "ζ" } else { "" };
        if self.depth() == 0 {
            return write!(f, "{prefix}[]");
        }
        write!(f, "{prefix}[{}]", self.rows_string())
    }
}

/// Part weights `p ≥ 1` splittings into `(s, r)` for one letter of the model.
fn splits(model: Model, p: u32) -> Vec<(u32, u32)> {
    match model {
        Model::Mono => vec![(p, 0)],
        Model::Bi => (1..=p).map(|s| (s, p - s)).collect(),
        Model::Zeta => (1..=p).map(|s| (s, p + 1 - s)).collect(),
    }
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if total < parts as u32 {
        return;
    }
    for first in 1..=total - (parts as u32 - 1) {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Every index of exactly `weight` and `depth` in the model, sorted by top
/// row then bottom row.
pub fn indices_of(model: Model, weight: u32, depth: usize) -> Vec<BracketIndex> {
    if depth == 0 {
        return if weight == 0 {
            vec![BracketIndex::empty(model)]
        } else {
            Vec::new()
        };
    }
    let mut comps = Vec::new();
    compositions(weight, depth, &mut Vec::new(), &mut comps);
    let mut out = Vec::new();
    for comp in comps {
        let mut acc: Vec<(Vec<u32>, Vec<u32>)> = vec![(Vec::new(), Vec::new())];
        for &p in &comp {
            let mut next = Vec::new();
            for (s, r) in &acc {
                for (si, ri) in splits(model, p) {
                    let mut s = s.clone();
                    let mut r = r.clone();
                    s.push(si);
                    r.push(ri);
                    next.push((s, r));
                }
            }
            acc = next;
        }
        for (s, r) in acc {
            let r = if model == Model::Mono { Vec::new() } else { r };
            out.push(BracketIndex { model, s, r });
        }
    }
    out.sort_by(|a, b| (&a.s, &a.r).cmp(&(&b.s, &b.r)));
    out
}

/// All indices of weight at most `max_weight`, the empty one included, in
/// graded order: weight, then depth, then top row, then bottom row.
pub fn enumerate_indices(model: Model, max_weight: u32) -> Vec<BracketIndex> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        for depth in 0..=w as usize {
            out.extend(indices_of(model, w, depth));
        }
    }
    out
}
