//! Exact computer algebra for rack bialgebras built from Leibniz algebras.

pub mod check;
pub mod defcohom;
pub mod envelope;
pub mod formats;
pub mod foundation;
pub mod leibniz;
pub mod lodpir;
pub mod rack;
pub mod starprod;
pub mod symcoalg;
