use std::fmt::Debug;

use crate::envelope::{Envelope, PbwWord};
use crate::foundation::{int, Combination, Scalar};

use super::finite::FiniteGroup;

/// A cocommutative Hopf algebra accessed through a basis.
pub trait HopfAlgebra: Send + Sync {
    type Elem: Clone + Ord + Debug + Send + Sync;

    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Combination<Self::Elem, Scalar>;
    fn coproduct(&self, a: &Self::Elem) -> Combination<(Self::Elem, Self::Elem), Scalar>;
    fn counit(&self, a: &Self::Elem) -> Scalar;
    fn antipode(&self, a: &Self::Elem) -> Combination<Self::Elem, Scalar>;
    /// Basis elements used to test laws; for infinite-dimensional algebras
    /// a filtration-bounded piece that is closed under the coproduct.
    fn sample_basis(&self, filtration: usize) -> Vec<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn mul_comb(
        &self,
        x: &Combination<Self::Elem, Scalar>,
        y: &Combination<Self::Elem, Scalar>,
    ) -> Combination<Self::Elem, Scalar> {
        let mut out = Combination::zero();
        for (a, c) in x {
            for (b, d) in y {
                out.add_scaled(&self.mul(a, b), &(c * d));
            }
        }
        out
    }

    /// `ad_h(x) = Σ h1 x S(h2)`.
    fn adjoint(
        &self,
        h: &Self::Elem,
        x: &Combination<Self::Elem, Scalar>,
    ) -> Combination<Self::Elem, Scalar> {
        let mut out = Combination::zero();
        for ((h1, h2), c) in &self.coproduct(h) {
            let left = self.mul_comb(&Combination::basis(h1.clone()), x);
            out.add_scaled(&self.mul_comb(&left, &self.antipode(h2)), c);
        }
        out
    }

    fn render_comb(&self, x: &Combination<Self::Elem, Scalar>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.iter()
            .map(|(a, c)| {
                format!(
                    "({})*{}",
                    crate::foundation::format_scalar(c),
                    self.render(a)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl HopfAlgebra for FiniteGroup {
    type Elem = usize;

    fn one(&self) -> usize {
        self.identity()
    }
    fn mul(&self, a: &usize, b: &usize) -> Combination<usize, Scalar> {
        Combination::basis(FiniteGroup::mul(self, *a, *b))
    }
    fn coproduct(&self, a: &usize) -> Combination<(usize, usize), Scalar> {
        Combination::basis((*a, *a))
    }
    fn counit(&self, _a: &usize) -> Scalar {
        int(1)
    }
    fn antipode(&self, a: &usize) -> Combination<usize, Scalar> {
        Combination::basis(self.inverse(*a))
    }
    fn sample_basis(&self, _filtration: usize) -> Vec<usize> {
        (0..self.order()).collect()
    }
    fn render(&self, a: &usize) -> String {
        self.label(*a).to_string()
    }
}

impl HopfAlgebra for Envelope {
    type Elem = PbwWord;

    fn one(&self) -> PbwWord {
        PbwWord::one()
    }
    fn mul(&self, a: &PbwWord, b: &PbwWord) -> Combination<PbwWord, Scalar> {
        self.straighten(a.concat(b).letters())
    }
    fn coproduct(&self, a: &PbwWord) -> Combination<(PbwWord, PbwWord), Scalar> {
        self.coproduct_word(a)
    }
    fn counit(&self, a: &PbwWord) -> Scalar {
        if a.is_empty() {
            int(1)
        } else {
            int(0)
        }
    }
    fn antipode(&self, a: &PbwWord) -> Combination<PbwWord, Scalar> {
        self.antipode_word(a)
    }
    fn sample_basis(&self, filtration: usize) -> Vec<PbwWord> {
        self.pbw_basis(filtration)
    }
    fn render(&self, a: &PbwWord) -> String {
        a.render(Some(self.lie().names()))
    }
    fn mul_comb(
        &self,
        x: &Combination<PbwWord, Scalar>,
        y: &Combination<PbwWord, Scalar>,
    ) -> Combination<PbwWord, Scalar> {
        Envelope::mul(self, x, y)
    }
}
