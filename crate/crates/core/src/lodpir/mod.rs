//! The tensor rack bialgebra `B⊗U(g)` and the maps `Γ`, `Ψ_LP` built from
//! the eulerian idempotent.

pub mod gamma;
pub mod tensor;

use thiserror::Error;

use crate::leibniz::LeibnizError;
use crate::rack::RackError;

pub use gamma::{hemi_primitives, lp_subalgebra, LodayPirashvili};
pub use tensor::{render, TensorRack, TensorRackElt};

#[derive(Debug, Error)]
pub enum LpError {
    #[error("{what} {found} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        found: usize,
        cap: usize,
    },
    #[error("argument has nonzero counit")]
    NotAugmentationIdeal,
    #[error(transparent)]
    Leibniz(#[from] LeibnizError),
    #[error(transparent)]
    Rack(#[from] RackError),
}
