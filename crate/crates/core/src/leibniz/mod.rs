//! Leibniz and Lie algebras given by structure constants.

pub mod algebra;
pub mod catalog;
pub mod ideals;
pub mod morphism;

pub use algebra::{render_vector, LeibnizAlgebra, LieAlgebra, StructureConstant, TripleViolation};
pub use catalog::{catalog, catalog_morphisms, hemi, hemi_over, planted_invalid, CATALOG_NAMES};
pub use ideals::{left_center, quotient_lie, squares_ideal, IdealChoice, Quotient, Subspace};
pub use morphism::LeibnizMorphism;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LeibnizError {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("{names} names given for dimension {dim}")]
    NameCount { dim: usize, names: usize },
    #[error("Leibniz identity fails on {} triple(s), first {}", .0.len(), .0[0])]
    IdentityViolation(Vec<TripleViolation>),
    #[error("bracket not antisymmetric on pair {pair:?}")]
    NotAntisymmetric { pair: (usize, usize) },
    #[error("Jacobi identity fails on triple {triple:?}")]
    JacobiViolation { triple: (usize, usize, usize) },
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("ideal out of range: {0}")]
    IdealOutOfRange(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map does not preserve the bracket on pair {pair:?}")]
    NotMorphism { pair: (usize, usize) },
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
}
