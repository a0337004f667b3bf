//! The symmetric coalgebra `S(h)` and its truncations `S(h)_(k)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::foundation::{binomial, Coeff, Combination, ExactMatrix, Scalar};

/// A sorted multiset of 0-based basis indices; the empty multiset is `1`.
/// Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMonomial(Vec<usize>);

impl SymMonomial {
    pub fn one() -> Self {
        SymMonomial(Vec::new())
    }

    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        SymMonomial(indices)
    }

    pub fn generator(i: usize) -> Self {
        SymMonomial(vec![i])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn times(&self, other: &SymMonomial) -> SymMonomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SymMonomial::new(v)
    }

    /// `(index, multiplicity)` pairs in increasing index order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &i in &self.0 {
            match out.last_mut() {
                Some((j, m)) if *j == i => *m += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }

    /// Exponent vector of length `dim`.
    pub fn exponents(&self, dim: usize) -> Vec<u32> {
        let mut e = vec![0u32; dim];
        for &i in &self.0 {
            e[i] += 1;
        }
        e
    }

    pub fn from_exponents(exps: &[u32]) -> SymMonomial {
        let mut v = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            v.extend(std::iter::repeat_n(i, e as usize));
        }
        SymMonomial(v)
    }

    /// All `(B, C, mult)` with `B ⊎ C = self` as multisets, where `mult`
    /// counts the position splittings giving that pair.
    pub fn splittings(&self) -> Vec<(SymMonomial, SymMonomial, Scalar)> {
        let mults = self.multiplicities();
        let mut out = Vec::new();
        let mut choice = vec![0usize; mults.len()];
        loop {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut coeff = Scalar::from_integer(1.into());
            for ((i, m), &b) in mults.iter().zip(&choice) {
                left.extend(std::iter::repeat_n(*i, b));
                right.extend(std::iter::repeat_n(*i, m - b));
                coeff *= binomial(*m, b);
            }
            out.push((SymMonomial(left), SymMonomial(right), coeff));
            let mut pos = 0;
            loop {
                if pos == mults.len() {
                    return out;
                }
                if choice[pos] < mults[pos].1 {
                    choice[pos] += 1;
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    /// 1-based rendering such as `e1•e1•e2`.
    pub fn render(&self, names: Option<&[String]>) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&i| match names {
                Some(n) => n[i].clone(),
                None => format!("e{}", i + 1),
            })
            .collect::<Vec<_>>()
            .join("•")
    }
}

impl Ord for SymMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SymMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// An element of `S(h)` (or `S(h)_(k)` when `cap` is set).
#[derive(Clone, PartialEq)]
pub struct SymElt<C: Coeff = Scalar> {
    dim: usize,
    cap: Option<usize>,
    terms: Combination<SymMonomial, C>,
}

/// Element of `S(h) ⊗ S(h)`.
pub type SymTensor<C = Scalar> = Combination<(SymMonomial, SymMonomial), C>;

impl<C: Coeff> fmt::Debug for SymElt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

impl<C: Coeff> SymElt<C> {
    pub fn zero(dim: usize, cap: Option<usize>) -> Self {
        SymElt {
            dim,
            cap,
            terms: Combination::zero(),
        }
    }

    pub fn one(dim: usize, cap: Option<usize>) -> Self {
        SymElt::monomial(dim, cap, SymMonomial::one())
    }

    pub fn generator(dim: usize, cap: Option<usize>, i: usize) -> Self {
        SymElt::monomial(dim, cap, SymMonomial::generator(i))
    }

    pub fn monomial(dim: usize, cap: Option<usize>, m: SymMonomial) -> Self {
        SymElt::from_combination(dim, cap, Combination::basis(m))
    }

    /// Builds an element, dropping monomials above the cap.
    pub fn from_combination(
        dim: usize,
        cap: Option<usize>,
        mut terms: Combination<SymMonomial, C>,
    ) -> Self {
        if let Some(k) = cap {
            terms.retain(|m| m.degree() <= k);
        }
        debug_assert!(terms.keys().all(|m| m.max_index().is_none_or(|i| i < dim)));
        SymElt { dim, cap, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn terms(&self) -> &Combination<SymMonomial, C> {
        &self.terms
    }

    pub fn into_terms(self) -> Combination<SymMonomial, C> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coefficient(&self, m: &SymMonomial) -> C {
        self.terms.get(m)
    }

    pub fn plus(&self, other: &Self) -> Result<Self, SymError> {
        self.check(other)?;
        Ok(SymElt::from_combination(
            self.dim,
            self.cap,
            self.terms.plus(&other.terms),
        ))
    }

    pub fn scaled(&self, c: &C) -> Self {
        SymElt::from_combination(self.dim, self.cap, self.terms.scaled(c))
    }

    fn check(&self, other: &Self) -> Result<(), SymError> {
        if self.dim != other.dim {
            Err(SymError::DimensionMismatch(self.dim, other.dim))
        } else {
            Ok(())
        }
    }

    /// Counit: the coefficient of `1`.
    pub fn counit(&self) -> C {
        self.terms.get(&SymMonomial::one())
    }

    /// Degree-`r` component `π_r`.
    pub fn degree_part(&self, r: usize) -> Self {
        SymElt::from_combination(self.dim, self.cap, self.terms.filtered(|m| m.degree() == r))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }
}

/// The symmetric product; monomials above the cap are dropped.
pub fn sym_product<C: Coeff>(a: &SymElt<C>, b: &SymElt<C>) -> Result<SymElt<C>, SymError> {
    a.check(b)?;
    let cap = match (a.cap, b.cap) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    };
    let mut out = Combination::zero();
    for (m, c) in a.terms() {
        for (n, d) in b.terms() {
            if cap.is_some_and(|k| m.degree() + n.degree() > k) {
                continue;
            }
            out.add_term(m.times(n), c.mul_ref(d));
        }
    }
    Ok(SymElt::from_combination(a.dim, cap, out))
}

/// Coproduct of a single monomial.
pub fn coproduct_monomial<C: Coeff>(m: &SymMonomial) -> SymTensor<C> {
    Combination::from_terms(
        m.splittings()
            .into_iter()
            .map(|(l, r, c)| ((l, r), C::from_scalar(c))),
    )
}

pub fn coproduct<C: Coeff>(a: &SymElt<C>) -> SymTensor<C> {
    a.terms().map_linear(coproduct_monomial)
}

/// `S(f)` for a linear map `f: K^n → K^m` given as an `m × n` matrix.
pub fn sym_map<C: Coeff>(f: &ExactMatrix, a: &SymElt<C>) -> Result<SymElt<C>, SymError> {
    if f.cols() != a.dim {
        return Err(SymError::DimensionMismatch(f.cols(), a.dim));
    }
    let columns: Vec<Vec<(usize, Scalar)>> = (0..f.cols())
        .map(|j| {
            f.column(j)
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !Coeff::is_zero(v))
                .collect()
        })
        .collect();
    let out = a.terms().map_linear(|m| {
        let mut acc: Combination<SymMonomial, C> = Combination::basis(SymMonomial::one());
        for &i in m.indices() {
            let mut next = Combination::zero();
            for (mono, c) in &acc {
                for (r, v) in &columns[i] {
                    next.add_term(mono.times(&SymMonomial::generator(*r)), c.scale(v));
                }
            }
            acc = next;
        }
        acc
    });
    Ok(SymElt::from_combination(f.rows(), a.cap, out))
}

/// Enumerated basis of `S(h)_(k)` in degree-lexicographic order.
#[derive(Clone, Debug)]
pub struct SymBasis {
    dim: usize,
    cap: usize,
    monomials: Vec<SymMonomial>,
    index: BTreeMap<SymMonomial, usize>,
}

impl SymBasis {
    pub fn new(dim: usize, cap: usize) -> Self {
        let mut monomials = vec![SymMonomial::one()];
        let mut layer = vec![SymMonomial::one()];
        for _ in 0..cap {
            let mut next = Vec::new();
            for m in &layer {
                let start = m.max_index().unwrap_or(0);
                for i in start..dim {
                    let mut v = m.indices().to_vec();
                    v.push(i);
                    next.push(SymMonomial(v));
                }
            }
            monomials.extend(next.iter().cloned());
            layer = next;
        }
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        SymBasis {
            dim,
            cap,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[SymMonomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &SymMonomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &SymMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn to_vector<C: Coeff>(&self, a: &SymElt<C>) -> Combination<usize, C> {
        Combination::from_terms(a.terms().iter().map(|(m, c)| {
            (
                self.index_of(m).expect("monomial inside the truncation"),
                c.clone(),
            )
        }))
    }

    pub fn from_vector<C: Coeff>(&self, v: &Combination<usize, C>) -> SymElt<C> {
        SymElt::from_combination(
            self.dim,
            Some(self.cap),
            Combination::from_terms(
                v.iter()
                    .map(|(i, c)| (self.monomials[*i].clone(), c.clone())),
            ),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::int;
    use proptest::prelude::*;

    type S = SymElt<Scalar>;

    fn mono(v: &[usize]) -> SymMonomial {
        SymMonomial::new(v.to_vec())
    }

    fn tensor(terms: &[(&[usize], &[usize], i64)]) -> SymTensor {
        Combination::from_terms(terms.iter().map(|(a, b, c)| ((mono(a), mono(b)), int(*c))))
    }

    #[test]
    fn products() {
        let e1 = S::generator(2, None, 0);
        let e2 = S::generator(2, None, 1);
        assert_eq!(
            sym_product(&e1, &e1).unwrap(),
            S::monomial(2, None, mono(&[0, 0]))
        );
        assert_eq!(sym_product(&S::one(2, None), &e2).unwrap(), e2);
        let lhs = sym_product(&e1.plus(&e2).unwrap(), &e1).unwrap();
        let rhs = S::monomial(2, None, mono(&[0, 0]))
            .plus(&S::monomial(2, None, mono(&[0, 1])))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(sym_product(&e1, &S::generator(3, None, 0)).is_err());
    }

    #[test]
    fn truncated_product_drops_high_degree() {
        let e1 = S::generator(2, Some(1), 0);
        assert!(sym_product(&e1, &e1).unwrap().is_zero());
    }

    #[test]
    fn coproducts() {
        assert_eq!(
            coproduct_monomial::<Scalar>(&mono(&[])),
            tensor(&[(&[], &[], 1)])
        );
        assert_eq!(
            coproduct_monomial::<Scalar>(&mono(&[0])),
            tensor(&[(&[0], &[], 1), (&[], &[0], 1)])
        );
        assert_eq!(
            coproduct_monomial::<Scalar>(&mono(&[0, 1])),
            tensor(&[
                (&[0, 1], &[], 1),
                (&[0], &[1], 1),
                (&[1], &[0], 1),
                (&[], &[0, 1], 1)
            ])
        );
        assert_eq!(
            coproduct_monomial::<Scalar>(&mono(&[0, 0])),
            tensor(&[(&[0, 0], &[], 1), (&[0], &[0], 2), (&[], &[0, 0], 1)])
        );
    }

    #[test]
    fn sym_map_examples() {
        let id = ExactMatrix::identity(2);
        let a = S::monomial(2, None, mono(&[0, 1]));
        assert_eq!(sym_map(&id, &a).unwrap(), a);
        let p = ExactMatrix::from_dense(&[vec![int(1), int(0)]]);
        let e11 = S::monomial(2, None, mono(&[0, 0]));
        assert_eq!(
            sym_map(&p, &e11).unwrap(),
            S::monomial(1, None, mono(&[0, 0]))
        );
        let zero = ExactMatrix::zeros(2, 2);
        assert!(sym_map(&zero, &S::generator(2, None, 0)).unwrap().is_zero());
        assert_eq!(sym_map(&zero, &S::one(2, None)).unwrap(), S::one(2, None));
    }

    #[test]
    fn basis_enumeration() {
        let b = SymBasis::new(2, 2);
        assert_eq!(b.len(), 6);
        let rendered: Vec<_> = b.monomials().iter().map(|m| m.render(None)).collect();
        assert_eq!(rendered, ["1", "e1", "e2", "e1•e1", "e1•e2", "e2•e2"]);
        assert_eq!(SymBasis::new(3, 3).len(), 20);
    }

    fn apply_left(t: &SymTensor) -> Combination<(SymMonomial, SymMonomial, SymMonomial), Scalar> {
        t.map_linear(|(a, b)| {
            coproduct_monomial::<Scalar>(a)
                .map_linear(|(x, y)| Combination::basis((x.clone(), y.clone(), b.clone())))
        })
    }

    fn apply_right(t: &SymTensor) -> Combination<(SymMonomial, SymMonomial, SymMonomial), Scalar> {
        t.map_linear(|(a, b)| {
            coproduct_monomial::<Scalar>(b)
                .map_linear(|(x, y)| Combination::basis((a.clone(), x.clone(), y.clone())))
        })
    }

    #[test]
    fn coalgebra_laws_up_to_degree_four() {
        for m in SymBasis::new(3, 4).monomials() {
            let d = coproduct_monomial::<Scalar>(m);
            assert_eq!(apply_left(&d), apply_right(&d), "{m:?}");
            let swapped: SymTensor =
                d.map_linear(|(a, b)| Combination::basis((b.clone(), a.clone())));
            assert_eq!(swapped, d);
            let counit_left: Combination<SymMonomial, Scalar> = d.map_linear(|(a, b)| {
                if a.is_one() {
                    Combination::basis(b.clone())
                } else {
                    Combination::zero()
                }
            });
            assert_eq!(counit_left, Combination::basis(m.clone()));
        }
    }

    fn arb_elt() -> impl Strategy<Value = S> {
        prop::collection::vec((prop::collection::vec(0usize..2, 0..3), -3i64..4), 0..4).prop_map(
            |ts| {
                S::from_combination(
                    2,
                    None,
                    Combination::from_terms(
                        ts.into_iter().map(|(m, c)| (SymMonomial::new(m), int(c))),
                    ),
                )
            },
        )
    }

    fn tensor_product(x: &SymTensor, y: &SymTensor) -> SymTensor {
        let mut out = Combination::zero();
        for ((a, b), c) in x {
            for ((p, q), d) in y {
                out.add_term((a.times(p), b.times(q)), c * d);
            }
        }
        out
    }

    proptest! {
        #[test]
        fn coproduct_is_multiplicative(a in arb_elt(), b in arb_elt()) {
            let ab = sym_product(&a, &b).unwrap();
            prop_assert_eq!(coproduct(&ab), tensor_product(&coproduct(&a), &coproduct(&b)));
            prop_assert_eq!(ab.counit(), a.counit() * b.counit());
        }

        #[test]
        fn product_commutative_associative(a in arb_elt(), b in arb_elt(), c in arb_elt()) {
            prop_assert_eq!(sym_product(&a, &b).unwrap(), sym_product(&b, &a).unwrap());
            prop_assert_eq!(
                sym_product(&sym_product(&a, &b).unwrap(), &c).unwrap(),
                sym_product(&a, &sym_product(&b, &c).unwrap()).unwrap()
            );
        }
    }
}
