//! Truncated power series and polynomials in formal constants.

mod poly;
mod series;

pub use poly::{Monomial, Poly};
pub use series::{ElemKind, SeriesError, TruncatedSeries, VariableSet};
