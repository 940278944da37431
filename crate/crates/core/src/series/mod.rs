//! Truncated power series in `q`, exact polynomials, Laurent series in `ε`
//! and the Eulerian numerators `P_{s-1}`.

mod laurent;
mod poly;
mod qseries;

pub use laurent::{f_poly_series, laurent_single_factor, EpsLaurent, XSeriesOverEps};
pub use poly::{eulerian, single_factor, QPolynomial};
pub use qseries::QSeries;
