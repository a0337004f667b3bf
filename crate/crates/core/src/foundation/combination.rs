//! Finite formal linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};

use super::scalar::{Coeff, Scalar};

/// A finite linear combination `Σ c_b · b` with no stored zero coefficients.
#[derive(Clone, PartialEq)]
pub struct Combination<B: Ord, C = Scalar> {
    terms: BTreeMap<B, C>,
}

/// Sparse coordinate vector in a finite-dimensional space.
pub type Vector<C = Scalar> = Combination<usize, C>;

impl<B: Ord + Clone, C: Coeff> Default for Combination<B, C> {
    fn default() -> Self {
        Combination::zero()
    }
}

impl<B: Ord + Clone, C: Coeff> Combination<B, C> {
    pub fn zero() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(b: B) -> Self {
        Combination::term(b, C::one())
    }

    pub fn term(b: B, c: C) -> Self {
        let mut out = Combination::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, C)>) -> Self {
        let mut out = Combination::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, b: &B) -> C {
        self.terms.get(b).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, C> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, B, C> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, b: B, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &C) {
        if factor.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.mul_ref(factor));
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg_ref());
        out
    }

    pub fn scaled(&self, factor: &C) -> Self {
        let mut out = Combination::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn scaled_by(&self, s: &Scalar) -> Self {
        Combination::from_terms(self.terms.iter().map(|(b, c)| (b.clone(), c.scale(s))))
    }

    pub fn neg(&self) -> Self {
        Combination::from_terms(self.terms.iter().map(|(b, c)| (b.clone(), c.neg_ref())))
    }

    /// Extends `f` linearly from basis elements.
    pub fn map_linear<B2: Ord + Clone>(
        &self,
        mut f: impl FnMut(&B) -> Combination<B2, C>,
    ) -> Combination<B2, C> {
        let mut out = Combination::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&B) -> bool) {
        self.terms.retain(|b, _| keep(b));
    }

    pub fn filtered(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        let mut out = self.clone();
        out.retain(|b| keep(b));
        out
    }

    pub fn map_coeffs<C2: Coeff>(&self, mut f: impl FnMut(&C) -> C2) -> Combination<B, C2> {
        Combination::from_terms(self.terms.iter().map(|(b, c)| (b.clone(), f(c))))
    }

    pub fn into_terms(self) -> BTreeMap<B, C> {
        self.terms
    }
}

impl<B: Ord + Clone, C: Coeff> FromIterator<(B, C)> for Combination<B, C> {
    fn from_iter<I: IntoIterator<Item = (B, C)>>(iter: I) -> Self {
        Combination::from_terms(iter)
    }
}

impl<'a, B: Ord, C> IntoIterator for &'a Combination<B, C> {
    type Item = (&'a B, &'a C);
    type IntoIter = btree_map::Iter<'a, B, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + std::fmt::Debug, C: Coeff> std::fmt::Debug for Combination<B, C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("({})·{:?}", c.render(), b))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coeff> Combination<usize, C> {
    pub fn from_dense(v: &[C]) -> Self {
        Combination::from_terms(v.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<C> {
        let mut out = vec![C::zero(); dim];
        for (i, c) in &self.terms {
            out[*i] = c.clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::scalar::int;

    #[test]
    fn cancellation_removes_terms() {
        let mut v: Vector = Combination::basis(3);
        v.add_term(3, int(-1));
        assert!(v.is_zero());
        let w: Vector = Combination::from_terms([(0, int(2)), (1, int(0))]);
        assert_eq!(w.len(), 1);
        assert_eq!(w.get(&0), int(2));
    }

    #[test]
    fn linear_extension() {
        let v: Vector = Combination::from_terms([(0, int(2)), (1, int(3))]);
        let w = v.map_linear(|&i| Combination::basis(i + 10));
        assert_eq!(w.get(&10), int(2));
        assert_eq!(w.get(&11), int(3));
    }
}
