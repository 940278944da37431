use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};

/// Alphabet symbols a [`Poly`] can be built over.
pub trait Symbol: Ord + Clone + fmt::Display {
    fn weight(&self) -> u32;
    fn depth(&self) -> u32;
}

/// The letter `z_{s,r}` with `s, r ≥ 1`, of weight `s + r - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub s: u32,
    pub r: u32,
}

impl Letter {
    pub fn new(s: u32, r: u32) -> Result<Self> {
        if s < 1 || r < 1 {
            return Err(Error::InvalidIndex(format!(
                "letters need s, r >= 1, got z({s},{r})"
            )));
        }
        Ok(Letter { s, r })
    }

    /// `z_s = z_{s,1}`.
    pub fn z(s: u32) -> Self {
        assert!(s >= 1);
        Letter { s, r: 1 }
    }
}

impl Symbol for Letter {
    fn weight(&self) -> u32 {
        self.s + self.r - 1
    }
    fn depth(&self) -> u32 {
        1
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z({},{})", self.s, self.r)
    }
}

/// Letters of the binary alphabet used for classical shuffles,
/// where `z_s ↔ x^{s-1} y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Xy {
    X,
    Y,
}

// y sorts before x so that x/y words sort like the z-words they encode.
impl Ord for Xy {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |a: &Xy| matches!(a, Xy::X) as u8;
        rank(self).cmp(&rank(other))
    }
}

impl PartialOrd for Xy {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Symbol for Xy {
    fn weight(&self) -> u32 {
        1
    }
    fn depth(&self) -> u32 {
        matches!(self, Xy::Y) as u32
    }
}

impl fmt::Display for Xy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Xy::X => "x",
            Xy::Y => "y",
        })
    }
}

pub type Word = Vec<Letter>;
pub type XyWord = Vec<Xy>;

pub fn word_weight<L: Symbol>(w: &[L]) -> u32 {
    w.iter().map(Symbol::weight).sum()
}

pub fn word_depth<L: Symbol>(w: &[L]) -> u32 {
    w.iter().map(Symbol::depth).sum()
}

/// Concatenated letters; the empty word prints as `1`.
pub fn format_word<L: Symbol>(w: &[L]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(ToString::to_string).collect()
}

/// The `x^{s_1} y^{r_1} … x^{s_l} y^{r_l}` form of a word.
pub fn word_to_h0(w: &[Letter]) -> String {
    let mut out = String::new();
    for l in w {
        out.extend(std::iter::repeat_n('x', l.s as usize));
        out.extend(std::iter::repeat_n('y', l.r as usize));
    }
    out
}

fn parse_z_letters(text: &str) -> Result<Word> {
    let bad = |detail: String| Error::Parse {
        what: "word",
        detail,
    };
    let mut rest = text;
    let mut out = Vec::new();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("z(")
            .ok_or_else(|| bad(format!("expected z(s,r) at {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| bad(format!("unclosed letter in {text:?}")))?;
        let (s, r) = body[..close]
            .split_once(',')
            .ok_or_else(|| bad(format!("letter needs two entries: {:?}", &body[..close])))?;
        let num = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| bad(format!("not a positive integer: {x:?}")))
        };
        out.push(Letter::new(num(s)?, num(r)?)?);
        rest = &body[close + 1..];
    }
    Ok(out)
}

/// Reads a word of `ℌ⁰ = Q + xℌy` written in `x`/`y`, one letter per block `x^s y^r`.
pub fn parse_h0(text: &str) -> Result<Word> {
    let bad = |detail: String| Error::Parse {
        what: "x/y word",
        detail,
    };
    let chars: Vec<char> = text.chars().collect();
    if chars.is_empty() {
        return Ok(Vec::new());
    }
    if chars[0] != 'x' || *chars.last().unwrap() != 'y' {
        return Err(bad(format!("{text:?} must start with x and end with y")));
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let start = i;
        while i < chars.len() && chars[i] == 'x' {
            i += 1;
        }
        let s = (i - start) as u32;
        let mid = i;
        while i < chars.len() && chars[i] == 'y' {
            i += 1;
        }
        let r = (i - mid) as u32;
        if i < chars.len() && chars[i] != 'x' {
            return Err(bad(format!("unexpected character {:?}", chars[i])));
        }
        out.push(Letter::new(s, r)?);
    }
    Ok(out)
}

/// Accepts `z(2,1)z(1,1)`, the equivalent `xxyxy`, and `1` or the empty
/// string for the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() || t == "1" {
        return Ok(Vec::new());
    }
    if t.starts_with('z') {
        parse_z_letters(&t)
    } else {
        parse_h0(&t)
    }
}

/// Reads an arbitrary binary word in `x` and `y`.
pub fn parse_xy(text: &str) -> Result<XyWord> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "1" {
        return Ok(Vec::new());
    }
    t.chars()
        .map(|c| match c {
            'x' => Ok(Xy::X),
            'y' => Ok(Xy::Y),
            _ => Err(Error::Parse {
                what: "x/y word",
                detail: format!("unexpected character {c:?}"),
            }),
        })
        .collect()
}

/// A finitely supported `Q`-linear combination of words; zero coefficients
/// are never stored, so equality is syntactic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<L: Symbol> {
    terms: BTreeMap<Vec<L>, Rational>,
}

pub type WordPoly = Poly<Letter>;
pub type XyPoly = Poly<Xy>;

impl<L: Symbol> Default for Poly<L> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

impl<L: Symbol> Poly<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty word with coefficient one.
    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Vec<L>) -> Self {
        Self::monomial(Rational::one(), w)
    }

    pub fn monomial(c: Rational, w: Vec<L>) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Vec<L>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[L]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<L>, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies a linear map given on words.
    pub fn map_linear(&self, f: impl Fn(&[L]) -> Self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// Multiplies every word on the left by `a`.
    pub fn prepend(&self, a: &L) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(a.clone());
            v.extend(w.iter().cloned());
            out.terms.insert(v, c.clone());
        }
        out
    }

    /// Multiplies every word on the right by `a`.
    pub fn append(&self, a: &L) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut v = w.clone();
            v.push(a.clone());
            out.terms.insert(v, c.clone());
        }
        out
    }

    /// The part made of words of exactly this weight and depth.
    pub fn leading_part(&self, weight: u32, depth: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_weight(w) == weight && word_depth(w) == depth)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|w| word_weight(w)).max()
    }

    /// Terms in display order: weight descending, then depth descending,
    /// then words ascending.
    pub fn sorted_terms(&self) -> Vec<(&Vec<L>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            (word_weight(b), word_depth(b))
                .cmp(&(word_weight(a), word_depth(a)))
                .then_with(|| a.cmp(b))
        });
        v
    }
}

impl<L: Symbol> fmt::Display for Poly<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                (_, true) => f.write_str(" − ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                f.write_str(&format_word(w))?;
            } else {
                write!(f, "{}·{}", format_rational(&a), format_word(w))?;
            }
        }
        Ok(())
    }
}

impl<L: Symbol> Add for &Poly<L> {
    type Output = Poly<L>;
    fn add(self, rhs: &Poly<L>) -> Poly<L> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<L: Symbol> Sub for &Poly<L> {
    type Output = Poly<L>;
    fn sub(self, rhs: &Poly<L>) -> Poly<L> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<L: Symbol> Neg for &Poly<L> {
    type Output = Poly<L>;
    fn neg(self) -> Poly<L> {
        self.scale(&-Rational::one())
    }
}

/// Concatenation product.
impl<L: Symbol> Mul for &Poly<L> {
    type Output = Poly<L>;
    fn mul(self, rhs: &Poly<L>) -> Poly<L> {
        let mut out = Poly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                out.add_term(w, ca * cb);
            }
        }
        out
    }
}
