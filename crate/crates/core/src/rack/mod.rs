//! Rack bialgebras, their augmented versions and the checks on them.

pub mod augmented;
pub mod bialgebra;
pub mod coalgebra;
pub mod finite;
pub mod hopf;
pub mod uar;
pub mod yang_baxter;

use thiserror::Error;

use crate::envelope::EnvelopeError;
use crate::leibniz::LeibnizError;

pub use augmented::{from_augmented_rack, hopf_adjoint, ActionFn, AugmentedRackBialgebra};
pub use bialgebra::{
    gauge, rack_morphism_check, self_distributivity, trivial_product, verify_rack_axioms,
    RackBialgebra,
};
pub use coalgebra::{coalgebra_morphism_check, Coalgebra, Tensor2};
pub use finite::{
    augmentation_equivariance, from_finite_rack, kx_from_table, rack_table_problem, FiniteGroup,
    FiniteRack,
};
pub use hopf::HopfAlgebra;
pub use uar::{sym_vector, uar, AdSym, Uar};
pub use yang_baxter::{r_tilde, yang_baxter_check, Tensor3};

#[derive(Debug, Error)]
pub enum RackError {
    #[error("malformed coalgebra: {0}")]
    MalformedCoalgebra(String),
    #[error("not a coalgebra morphism: {0}")]
    NotCoalgebraMorphism(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("invalid rack: {0}")]
    InvalidRack(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("augmentation is not equivariant: {0}")]
    NotEquivariantAugmentation(String),
    #[error("structure is not cocommutative")]
    NotCocommutative,
    #[error(transparent)]
    Leibniz(#[from] LeibnizError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
}
