//! Exact scalars, vectors and matrices.
//!
//! No floating point is used anywhere in this module; `Rational::to_f64`
//! exists only for human-readable previews.

mod linalg;
mod rational;

pub use linalg::{det, is_unimodular, solve_linear, RatMatrix, RatVector};
pub use rational::{binomial, Rational};

/// Shorthand for an `i64`-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
