//! Scalar types: exact Gaussian rationals and the approximate complex
//! numbers used by the witness search.

mod approx;
mod field;
mod gaussian;

pub use approx::{best_rational, is_near_gaussian_rational, to_approx, ApproxComplex};
pub use field::Field;
pub use gaussian::{binomial, GaussianRational};

/// Arbitrary precision rational with positive, reduced denominator.
pub type Rational = num_rational::BigRational;
