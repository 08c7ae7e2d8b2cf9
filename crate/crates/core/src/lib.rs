//! Exact computations with complex filiform Leibniz algebras whose natural
//! gradation is a non-Lie algebra.
//!
//! The crate works with two normal-form families on a basis `e_0, ..., e_n`:
//!
//! ```text
//! family 1:  [e_0,e_0] = e_2,  [e_i,e_0] = e_{i+1}        (1 <= i <= n-1)
//!            [e_0,e_1] = a_3 e_3 + ... + a_{n-1} e_{n-1} + theta e_n
//!            [e_j,e_1] = a_3 e_{j+2} + ... + a_{n+1-j} e_n (1 <= j <= n-2)
//!
//! family 2:  [e_0,e_0] = e_2,  [e_i,e_0] = e_{i+1}        (2 <= i <= n-1)
//!            [e_0,e_1] = b_3 e_3 + ... + b_n e_n
//!            [e_1,e_1] = gamma e_n
//!            [e_j,e_1] = b_3 e_{j+2} + ... + b_{n+1-j} e_n (2 <= j <= n-2)
//! ```
//!
//! Everything is computed over the Gaussian rationals so that identities
//! can be checked with exact zero tests. Floating point only appears in the
//! numeric witness search of [`isomorphism::search`].

pub mod algebra;
pub mod cli;
mod error;
pub mod families;
pub mod io;
pub mod isomorphism;
pub mod random;
pub mod scalars;
pub mod transforms;

pub use error::{Error, Result};

pub use algebra::{FlagSeries, GradedType, StructureTable, Vector};
pub use families::{Family1Params, Family2Params, FamilyParams};
pub use isomorphism::{IsoVerdict, SearchConfig, Witness};
pub use scalars::{ApproxComplex, Field, GaussianRational, Rational};
