//! Bracket indices, their enumeration, exact and floating evaluation, and
//! the on-disk expansion cache.

mod cache;
mod dp;
mod eval;
mod index;

pub use cache::{format_record, parse_record, ExpansionCache, CACHE_HEADER};
pub use eval::{
    eval_bi, eval_float, eval_mono, eval_zeta, evaluate, float_order, DEFAULT_TERM_BUDGET,
};
pub use index::{enumerate_indices, indices_of, BracketIndex, Model};
