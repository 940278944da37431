//! Exact computer algebra for q-series of mono-brackets, bi-brackets and
//! multiple q-zeta brackets.
//!
//! * [`arith`]: factorials, binomials and the Bernoulli-type sequences `λ`, `λ̂`.
//! * [`series`]: truncated `q`-series, polynomials, `ε`-Laurent series.
//! * [`brackets`]: indices, enumeration, exact and float evaluation, cache.
//! * [`words`]: the word algebra over `z_{s,r}` with its products and maps.
//! * [`relations`]: exact rank, kernels and relation discovery.
//! * [`asympt`]: the `q = 1 - ε` expansions and numeric radial limits.
//! * [`suite`]: the fixed reproduction checklist run by `qzeta verify`.

pub mod arith;
pub mod asympt;
pub mod brackets;
pub mod error;
pub mod relations;
pub mod series;
pub mod words;

pub use arith::Rational;
pub use error::{Error, Result};
pub mod suite;
