//! Star product on polynomial functions on `h*` and the deformed product
//! on `S(h)`.

pub mod poly;
pub mod star;

use thiserror::Error;

pub use poly::{psi, psi_inverse, psi_monomial, Exponents, PolyFun};
pub use star::{
    adtilde, deformed_rack, exp_compat_check, exp_self_distributivity, formal_rack, poisson,
    psi_intertwining, scaling_lemma, star, star_h, star_on_sym, ExpCompat, HSeriesVec,
};

#[derive(Debug, Error, PartialEq)]
pub enum StarError {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("monomial of degree {0} exceeds the degree cap")]
    DegreeCap(usize),
}
