use crate::foundation::{ExactMatrix, Vector};

use super::algebra::{dense, sparse, LeibnizAlgebra};
use super::ideals::{Quotient, Subspace};
use super::LeibnizError;

/// A bracket-preserving linear map, stored as a `target × source` matrix.
#[derive(Clone, Debug)]
pub struct LeibnizMorphism {
    pub source: LeibnizAlgebra,
    pub target: LeibnizAlgebra,
    pub matrix: ExactMatrix,
}

impl LeibnizMorphism {
    pub fn new(
        source: LeibnizAlgebra,
        target: LeibnizAlgebra,
        matrix: ExactMatrix,
    ) -> Result<Self, LeibnizError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(LeibnizError::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        let f = LeibnizMorphism {
            source,
            target,
            matrix,
        };
        for i in 0..f.source.dim() {
            for j in 0..f.source.dim() {
                let lhs = f.apply(f.source.basis_bracket(i, j));
                let rhs = f.target.bracket(&f.apply_basis(i), &f.apply_basis(j));
                if lhs != rhs {
                    return Err(LeibnizError::NotMorphism {
                        pair: (i + 1, j + 1),
                    });
                }
            }
        }
        Ok(f)
    }

    pub fn identity(h: &LeibnizAlgebra) -> Self {
        LeibnizMorphism {
            source: h.clone(),
            target: h.clone(),
            matrix: ExactMatrix::identity(h.dim()),
        }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        sparse(&self.matrix.apply(&dense(v, self.source.dim())))
    }

    pub fn apply_basis(&self, i: usize) -> Vector {
        sparse(&self.matrix.column(i))
    }

    pub fn image_of(&self, s: &Subspace) -> Subspace {
        let imgs: Vec<_> = s.basis().iter().map(|v| self.matrix.apply(v)).collect();
        Subspace::span(&imgs, self.target.dim())
    }

    /// The induced map `g → g'` between Lie quotients; needs `f(z) ⊆ z'`.
    pub fn induced_on_quotients(
        &self,
        src: &Quotient,
        tgt: &Quotient,
    ) -> Result<ExactMatrix, LeibnizError> {
        if !tgt.ideal.contains(&self.image_of(&src.ideal)) {
            return Err(LeibnizError::IdealOutOfRange(
                "image of the source ideal leaves the target ideal".into(),
            ));
        }
        let mut m = ExactMatrix::zeros(tgt.g_dim(), src.g_dim());
        for a in 0..src.g_dim() {
            let img = tgt.project(&self.apply(&src.lift(&Vector::basis(a))));
            for (b, v) in &img {
                m.set(*b, a, v.clone());
            }
        }
        Ok(m)
    }
}
