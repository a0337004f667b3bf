//! The universal enveloping algebra `U(g)` in PBW normal form.

pub mod action;
pub mod checks;
pub mod pbw;
pub mod series;

pub use action::{SymAction, SymComb};
pub use checks::{render_uea, verify_envelope};
pub use pbw::{Envelope, PbwWord, Uea, UeaElt, UeaTensor};
pub use series::{
    convolution_power, convolution_series, convolve, eulerian, eulerian_word, exp_coefficients,
    f_series, g_series,
};

use crate::leibniz::LeibnizError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnvelopeError {
    #[error("operands belong to different Lie algebras")]
    AlgebraMismatch,
    #[error("convolution series does not terminate: f(1) is nonzero")]
    NonTerminating,
    #[error(transparent)]
    Leibniz(#[from] LeibnizError),
}
