//! Exact arithmetic kernel: arbitrary-precision rationals, multivariate
//! polynomials, canonical rational functions, gcd/resultant machinery,
//! integer root finding, dispersion sets, and exact linear solving.

pub mod factor;
pub mod flist;
mod intfactor;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod roots;

pub use factor::{factor_polynomial, Factored};
pub use flist::FactorProduct;
pub use linalg::solve_linear_system;
pub use poly::{poly_gcd, rat_as_i64, rat_as_int, rat_frac, rat_int, resultant, Int, Polynomial, Rat};
pub use ratfun::RationalFunction;
pub use roots::{dispersion_set, integer_roots};
