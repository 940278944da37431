//! Words over the letters `z_{s,r}`, their products, and the maps between
//! the bracket and zeta readings.

mod eval;
mod maps;
mod products;
mod word;

pub use eval::{enumerate_words, eval_poly, eval_poly_float, index_word, word_index, EvalMap};
pub use maps::{
    absorb_y, dual_stuffle, dual_stuffle_unconjugated, phi, phi_inv, phi_inv_word, phi_word,
    sigma, tau, tau_word, xy_to_z, z_to_xy,
};
pub use products::{diamond, mzv_shuffle, mzv_stuffle, stuffle};
pub use word::{
    format_word, parse_h0, parse_word, parse_xy, word_depth, word_to_h0, word_weight, Letter,
    Poly, Symbol, Word, WordPoly, Xy, XyPoly, XyWord,
};
