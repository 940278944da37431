//! Behaviour as `q = 1 − ε → 1⁻`: exact `ε`-expansions of the single
//! factors and numeric radial limits against multiple zeta values.

mod lemma;
mod limits;
mod mzv;

pub use lemma::{displayed_expansion, displayed_residual, lemma1_check, lemma1_holds, lemma1_rhs};
pub use limits::{
    is_admissible_bi, limit_theorem_check, prop2_limit, prop2_target, LimitCheck, LimitKind,
    LimitRow,
};
pub use mzv::{mzv_numeric, MzvValue, DEFAULT_MZV_CUTOFF};
