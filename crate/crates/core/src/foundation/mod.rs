//! Exact scalars, ħ-polynomials, sparse combinations and linear algebra.

pub mod combination;
pub mod hpoly;
pub mod linalg;
pub mod scalar;

pub use combination::{Combination, Vector};
pub use hpoly::{hpoly_mul, HPoly};
pub use linalg::{ExactMatrix, Rref};
pub use scalar::{
    binomial, factorial, format_scalar, frac, int, parse_scalar, Coeff, Scalar, ScalarParseError,
};
