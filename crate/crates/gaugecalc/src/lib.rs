//! Exact computation of U(3) Donaldson series of elliptic surfaces and their
//! blowups and fiber sums, the universal blowup series, and Chern-Simons, rho
//! and Floer-degree data of flat connections on Brieskorn spheres.
//!
//! The series machinery is generic over the coefficient ring; the aliases
//! below fix the common choices.

pub mod exactnum;
pub mod blowup;
pub mod brieskorn;
pub mod donaldson;
pub mod eigencat;
pub mod formal;
pub mod manifolds;

pub use exactnum::{CycloNum, Rational};

/// Polynomials in named constants with exact cyclotomic coefficients.
pub type RationalPoly = formal::Poly<CycloNum>;
/// Series with exact cyclotomic coefficients.
pub type ExactSeries = formal::TruncatedSeries<CycloNum>;
/// Series whose coefficients are polynomials in formal constants.
pub type FormalSeries = formal::TruncatedSeries<RationalPoly>;
/// Floating-point series, for display and quick cross-checks.
pub type ApproxSeries = formal::TruncatedSeries<num_complex::Complex64>;
