use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// The scalar interface shared by the exact and approximate code paths.
///
/// Exact arithmetic goes through [`GaussianRational`](super::GaussianRational);
/// [`ApproxComplex`](super::ApproxComplex) is only used to evaluate the same
/// polynomial maps numerically during witness search.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Preference used when choosing elimination pivots. Exact scalars
    /// return 1 for any nonzero value so the first nonzero entry wins.
    fn pivot_weight(&self) -> f64;

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.clone() * inv)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        result
    }
}
