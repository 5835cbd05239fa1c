//! Error taxonomy shared by the whole crate.
//!
//! The five user-facing algorithm messages are fixed strings; everything
//! else is internal plumbing that callers may map onto them.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text, with a byte offset into the source.
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// A known function was called with the wrong number of arguments.
    #[error("illegal number of arguments")]
    Arity,

    /// The term ratio a(k)/a(k-1) is not a rational function of k.
    #[error("Gosper algorithm not applicable")]
    GosperNotApplicable,

    /// Gosper's decision procedure proved that no hypergeometric
    /// antidifference exists.
    #[error("Gosper algorithm: no closed form solution exists")]
    GosperNoClosedForm,

    /// One of the term ratios f(n,k)/f(n-1,k) or f(n,k)/f(n,k-1) is not
    /// rational.
    #[error("Zeilberger algorithm not applicable")]
    ZeilbergerNotApplicable,

    /// No recurrence of order <= the configured maximum was found.
    #[error("Zeilberger algorithm fails. Enlarge zb_order")]
    ZeilbergerOrderExceeded,

    /// An argument of a factorial/gamma/binomial/pochhammer factor is not
    /// integer-linear in the running variable (e.g. factorial(k/2)).
    #[error("not representable as a gamma product: {0}")]
    NotGammaRepresentable(String),

    /// Exact polynomial division requested on a non-multiple.
    #[error("exact division failed")]
    NotDivisible,

    /// Division by the zero polynomial or zero expression.
    #[error("division by zero")]
    DivisionByZero,

    /// A linear system has no solution.
    #[error("linear system has no solution")]
    NoSolution,

    /// An expression is undefined at an integer point of a summation range.
    #[error("pole at {0} inside the summation range")]
    PoleInRange(String),

    /// A factor of the summand is undefined at some point of the sum.
    #[error("pole at {0}")]
    PoleAtPoint(String),

    /// The instantiated summand does not vanish within the support scan
    /// window, so the sum over all integers cannot be bracketed.
    #[error("summand support could not be bracketed")]
    UnboundedSupport,

    /// First-order recurrence with an identically zero leading coefficient.
    #[error("degenerate recurrence: leading coefficient is zero")]
    DegenerateRecurrence,

    /// Any other contract violation on the public surface.
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
