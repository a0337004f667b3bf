//! The adjoint deformation complex of a cocommutative rack bialgebra.

pub mod cohomology;
pub mod complex;
pub mod relations;

use thiserror::Error;

pub use cohomology::{
    cohomology, deform, equivalent, first_order_axioms, first_order_from_uar, intertwines,
    CohomologyDims, Equivalence, InfinitesimalDeformation,
};
pub use complex::{expand, Cochain, DeformationComplex, Face, DEFAULT_CAP};
pub use relations::{mu_n_properties, verify_relations, verify_relations_sampled};

#[derive(Debug, Error, PartialEq)]
pub enum DefError {
    #[error("rack bialgebra is not cocommutative")]
    NotCocommutative,
    #[error("{unknowns} unknowns exceed the cap of {cap}")]
    TooLarge { unknowns: usize, cap: usize },
    #[error("face index {index} out of range for degree {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cochain is not a coderivation")]
    NotCoderivation,
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("not an infinitesimal deformation: {0}")]
    NotDeformation(String),
}
