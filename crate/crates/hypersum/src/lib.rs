//! Symbolic summation of hypergeometric terms.
//!
//! An expression a(k) is a hypergeometric term when a(k)/a(k-1) is a rational
//! function of k. This crate decides indefinite summability of such terms
//! (Gosper's algorithm), derives holonomic recurrences for definite sums over
//! all integers (Zeilberger's creative telescoping), exposes the generalized
//! hypergeometric pFq front end, simplification operators for gamma-product
//! ratios, and independent verification oracles for every result.
//!
//! Entry points:
//! - [`expr::parse`] / [`expr::print`] and the [`expr::Expr`] tree
//! - [`gosper::gosper`], [`gosper::gosper_definite`]
//! - [`zeilberger::sumrecursion`], [`zeilberger::first_order_closed_form`]
//! - [`hyper::hyperterm`], [`hyper::hyperrecursion`]
//! - [`simplify::simplify_combinatorial`], [`simplify::term_ratio`]
//! - [`verify`] for brute-force checks of the engines' output

pub mod error;
pub mod expr;
pub mod field;
pub mod gosper;
pub mod hyper;
pub mod simplify;
pub mod trace;
pub mod verify;
pub mod zeilberger;

pub use error::{Error, Result};
pub use expr::{parse, print, Expr, Substitution};
