//! Linear relations among brackets, found on truncated expansions and
//! re-checked at a higher order.

mod counting;
mod linalg;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::brackets::{enumerate_indices, BracketIndex, ExpansionCache, Model};
use crate::error::{Error, Result};

pub use counting::{
    bracket_counts, conjectural_dims, dual_class_count, dual_representative, rational_gf,
};
pub use linalg::{decompose, exact_decompose, in_span, normalize, rank, rank_and_kernel, Decomposition};

/// Default discovery and verification orders.
pub const DISCOVER_ORDER: usize = 200;
pub const VERIFY_ORDER: usize = 500;

/// Rows of `q`-coefficients `q^0…q^order`, one per bracket.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffMatrix {
    pub rows: Vec<BracketIndex>,
    pub order: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl CoeffMatrix {
    pub fn build(family: &[BracketIndex], order: usize, cache: &mut ExpansionCache) -> Self {
        let entries = family
            .iter()
            .map(|idx| cache.get_or_compute(idx, order).coeffs().to_vec())
            .collect();
        CoeffMatrix {
            rows: family.to_vec(),
            order,
            entries,
        }
    }

    pub fn decompose(&self) -> Decomposition {
        decompose(&self.entries)
    }
}

/// Whether `Σ v_i f_i = 0` through `q^order`.
pub fn annihilates(v: &[BigInt], family: &[BracketIndex], order: usize, cache: &mut ExpansionCache) -> bool {
    let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    let rows: Vec<(Vec<BigInt>, BigInt)> = support
        .iter()
        .map(|&i| cache.get_or_compute(&family[i], order).to_integer_row())
        .collect();
    let l = rows.iter().fold(BigInt::one(), |l, (_, d)| l.lcm(d));
    let scaled: Vec<BigInt> = support
        .iter()
        .zip(&rows)
        .map(|(&i, (_, d))| &v[i] * (&l / d))
        .collect();
    (0..=order).all(|k| {
        let mut acc = BigInt::zero();
        for (c, (row, _)) in scaled.iter().zip(&rows) {
            acc += c * &row[k];
        }
        acc.is_zero()
    })
}

/// A bracket family with an integer kernel basis of its expansions.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationSet {
    pub family: Vec<BracketIndex>,
    pub kernel_basis: Vec<Vec<BigInt>>,
    pub discover_order: usize,
    pub verify_order: usize,
    pub verified: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct RelationSetJson {
    family: Vec<BracketIndex>,
    kernel: Vec<Vec<String>>,
    discover_order: usize,
    verify_order: usize,
    verified: Vec<bool>,
}

impl RelationSet {
    pub fn rank(&self) -> usize {
        self.family.len() - self.kernel_basis.len()
    }

    pub fn all_verified(&self) -> bool {
        self.verified.iter().all(|&v| v)
    }

    /// Whether `Σ c·idx` over the given terms lies in the kernel span.
    /// Indices outside the family make the answer `false`.
    pub fn contains(&self, terms: &[(BracketIndex, Rational)]) -> bool {
        let mut v = vec![Rational::zero(); self.family.len()];
        for (idx, c) in terms {
            match self.family.iter().position(|f| f == idx) {
                Some(i) => v[i] += c,
                None => return false,
            }
        }
        in_span(&self.kernel_basis, &v)
    }

    pub fn format_relation(&self, k: usize) -> String {
        format_relation(&self.family, &self.kernel_basis[k])
    }

    pub fn to_json(&self) -> String {
        let j = RelationSetJson {
            family: self.family.clone(),
            kernel: self
                .kernel_basis
                .iter()
                .map(|v| v.iter().map(BigInt::to_string).collect())
                .collect(),
            discover_order: self.discover_order,
            verify_order: self.verify_order,
            verified: self.verified.clone(),
        };
        serde_json::to_string(&j).expect("relation sets serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |detail: String| Error::Parse {
            what: "relation set",
            detail,
        };
        let j: RelationSetJson = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let kernel_basis = j
            .kernel
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.parse::<BigInt>().map_err(|e| bad(e.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if kernel_basis.iter().any(|v| v.len() != j.family.len()) || j.verified.len() != kernel_basis.len() {
            return Err(bad("kernel vectors do not match the family".into()));
        }
        Ok(RelationSet {
            family: j.family,
            kernel_basis,
            discover_order: j.discover_order,
            verify_order: j.verify_order,
            verified: j.verified,
        })
    }
}

/// `2·ζ[2;2] − ζ[2;1] − 2·ζ[3;1] + 2·ζ[2,1;1,1] = 0`
pub fn format_relation(family: &[BracketIndex], v: &[BigInt]) -> String {
    let mut out = String::new();
    for (idx, c) in family.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('−');
            }
        } else {
            out.push_str(if c.is_negative() { " − " } else { " + " });
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag}·");
        }
        let _ = write!(out, "{idx}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" = 0");
    out
}

fn verify_all(
    family: &[BracketIndex],
    kernel: &[Vec<BigInt>],
    order: usize,
    cache: &mut ExpansionCache,
) -> Vec<bool> {
    kernel.iter().map(|v| annihilates(v, family, order, cache)).collect()
}

/// Kernel of an explicit family at `n_discover`, each vector re-checked at
/// `n_verify`.
pub fn relations_of(
    family: Vec<BracketIndex>,
    n_discover: usize,
    n_verify: usize,
    cache: &mut ExpansionCache,
) -> Result<RelationSet> {
    if n_verify < n_discover {
        return Err(Error::InvalidArgument(format!(
            "verification order {n_verify} is below the discovery order {n_discover}"
        )));
    }
    let m = CoeffMatrix::build(&family, n_discover, cache);
    let kernel = m.decompose().kernel;
    let verified = verify_all(&family, &kernel, n_verify, cache);
    Ok(RelationSet {
        family,
        kernel_basis: kernel,
        discover_order: n_discover,
        verify_order: n_verify,
        verified,
    })
}

/// All relations among the indices of weight ≤ `max_weight`.
pub fn find_relations(
    model: Model,
    max_weight: u32,
    n_discover: usize,
    n_verify: usize,
    cache: &mut ExpansionCache,
) -> Result<RelationSet> {
    relations_of(enumerate_indices(model, max_weight), n_discover, n_verify, cache)
}

/// Relations among one representative per duality class (see
/// [`dual_representative`]); for zeta brackets these are exactly the
/// relations not already implied by duality.
pub fn find_relations_mod_duality(
    model: Model,
    max_weight: u32,
    n_discover: usize,
    n_verify: usize,
    cache: &mut ExpansionCache,
) -> Result<RelationSet> {
    let family = enumerate_indices(model, max_weight)
        .into_iter()
        .filter(|idx| dual_representative(idx) == *idx)
        .collect();
    relations_of(family, n_discover, n_verify, cache)
}

/// The vectors `e_i − e_j` for every pair `idx_j = dual(idx_i)`, `i < j`.
pub fn duality_relations(family: &[BracketIndex]) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for (i, idx) in family.iter().enumerate() {
        let Some(d) = idx.dual() else { continue };
        if let Some(j) = family.iter().position(|f| *f == d) {
            if j > i {
                let mut v = vec![BigInt::zero(); family.len()];
                v[i] = BigInt::one();
                v[j] = -BigInt::one();
                out.push(v);
            }
        }
    }
    out
}

/// `d_0, …, d_max_weight`: ranks of the families of weight ≤ n at `order`.
pub fn dims(model: Model, max_weight: u32, order: usize, cache: &mut ExpansionCache) -> Vec<usize> {
    let family = enumerate_indices(model, max_weight);
    let d = CoeffMatrix::build(&family, order, cache).decompose();
    (0..=max_weight)
        .map(|n| d.independent.iter().filter(|&&i| family[i].weight() <= n).count())
        .collect()
}

/// Depth-one bi-brackets `[s; r]` with `0 ≤ r < s` and `s + r ≤ n`.
pub fn depth1_family(n: u32) -> Vec<BracketIndex> {
    let mut out = Vec::new();
    for w in 1..=n {
        for r in 0..w {
            let s = w - r;
            if r < s {
                out.push(BracketIndex::bi(&[s], &[r]).expect("valid"));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Depth1Report {
    pub count: usize,
    pub rank: usize,
    /// Full rank of the truncations, which proves independence of the series.
    pub certified: bool,
}

pub fn depth1_independence(n: u32, order: usize, cache: &mut ExpansionCache) -> Depth1Report {
    let family = depth1_family(n);
    let rank = CoeffMatrix::build(&family, order, cache).decompose().rank;
    Depth1Report {
        count: family.len(),
        rank,
        certified: rank == family.len(),
    }
}
