use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::foundation::{factorial, int, Combination, ExactMatrix, Scalar};
use crate::leibniz::LieAlgebra;
use crate::symcoalg::{SymElt, SymMonomial};

use super::EnvelopeError;

/// A word of `g`-basis indices; in normal form it is weakly increasing.
/// Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PbwWord(Vec<usize>);

impl PbwWord {
    pub fn one() -> Self {
        PbwWord(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        PbwWord(vec![i])
    }

    /// Wraps an arbitrary word; only sorted words are normal forms.
    pub fn raw(v: Vec<usize>) -> Self {
        PbwWord(v)
    }

    pub fn sorted(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        PbwWord(v)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn concat(&self, other: &PbwWord) -> PbwWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PbwWord(v)
    }

    pub fn render(&self, names: Option<&[String]>) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&i| match names {
                Some(n) => n[i].clone(),
                None => format!("x{}", i + 1),
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

impl Ord for PbwWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PbwWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PbwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

/// Element of `U(g)` as a combination of words (normal form when produced
/// by the `Envelope` operations).
pub type Uea = Combination<PbwWord, Scalar>;

/// Element of `U(g) ⊗ U(g)`.
pub type UeaTensor = Combination<(PbwWord, PbwWord), Scalar>;

/// The universal enveloping algebra of a Lie algebra, with a memo table for
/// straightening.
pub struct Envelope {
    lie: LieAlgebra,
    cache: Mutex<HashMap<Vec<usize>, Uea>>,
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope").field("lie", &self.lie).finish()
    }
}

impl Envelope {
    pub fn new(lie: LieAlgebra) -> Arc<Self> {
        Arc::new(Envelope {
            lie,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn one(&self) -> Uea {
        Uea::basis(PbwWord::one())
    }

    pub fn generator(&self, i: usize) -> Uea {
        Uea::basis(PbwWord::generator(i))
    }

    /// Embeds `g` (a coordinate vector) as primitives.
    pub fn from_lie(&self, v: &Combination<usize, Scalar>) -> Uea {
        v.map_linear(|&i| self.generator(i))
    }

    /// PBW normal form of an arbitrary word: the first descent `e_j e_i`
    /// (`j > i`) is rewritten to `e_i e_j + [e_j, e_i]`.
    pub fn straighten(&self, word: &[usize]) -> Uea {
        let Some(p) = word.windows(2).position(|w| w[0] > w[1]) else {
            return Uea::basis(PbwWord(word.to_vec()));
        };
        if let Some(hit) = self.cache.lock().expect("cache lock").get(word) {
            return hit.clone();
        }
        let (j, i) = (word[p], word[p + 1]);
        let mut swapped = word.to_vec();
        swapped.swap(p, p + 1);
        let mut out = self.straighten(&swapped);
        for (k, c) in self.lie.basis_bracket(j, i) {
            let mut w = Vec::with_capacity(word.len() - 1);
            w.extend_from_slice(&word[..p]);
            w.push(*k);
            w.extend_from_slice(&word[p + 2..]);
            out.add_scaled(&self.straighten(&w), c);
        }
        self.cache
            .lock()
            .expect("cache lock")
            .insert(word.to_vec(), out.clone());
        out
    }

    /// Straightens every word of a combination.
    pub fn normalize(&self, u: &Uea) -> Uea {
        u.map_linear(|w| self.straighten(w.letters()))
    }

    pub fn mul(&self, u: &Uea, v: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (a, c) in u {
            for (b, d) in v {
                out.add_scaled(&self.straighten(a.concat(b).letters()), &(c * d));
            }
        }
        out
    }

    pub fn counit(&self, u: &Uea) -> Scalar {
        u.get(&PbwWord::one())
    }

    /// `Δ` on a normal word: all splittings into complementary subsequences.
    pub fn coproduct_word(&self, w: &PbwWord) -> UeaTensor {
        let n = w.len();
        let mut out = UeaTensor::zero();
        for mask in 0u64..(1u64 << n) {
            let (mut l, mut r) = (Vec::new(), Vec::new());
            for (pos, &x) in w.letters().iter().enumerate() {
                if mask >> pos & 1 == 1 {
                    l.push(x);
                } else {
                    r.push(x);
                }
            }
            out.add_term((PbwWord(l), PbwWord(r)), int(1));
        }
        out
    }

    pub fn coproduct(&self, u: &Uea) -> UeaTensor {
        u.map_linear(|w| self.coproduct_word(w))
    }

    /// Antipode: `(−1)^m` times the reversed word, straightened.
    pub fn antipode_word(&self, w: &PbwWord) -> Uea {
        let mut rev = w.letters().to_vec();
        rev.reverse();
        let sign = if w.len().is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        self.straighten(&rev).scaled(&sign)
    }

    pub fn antipode(&self, u: &Uea) -> Uea {
        u.map_linear(|w| self.antipode_word(w))
    }

    /// `ad_u(v) = Σ u1 v S(u2)`.
    pub fn adjoint(&self, u: &Uea, v: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (w, c) in u {
            for ((a, b), d) in &self.coproduct_word(w) {
                let left = self.mul(&Uea::basis(a.clone()), v);
                let term = self.mul(&left, &self.antipode_word(b));
                out.add_scaled(&term, &(c * d));
            }
        }
        out
    }

    /// Symmetrization `ω(ξ1•…•ξk) = (1/k!) Σ_σ ξσ(1)…ξσ(k)`.
    pub fn omega_monomial(&self, m: &SymMonomial) -> Uea {
        let k = m.degree();
        let mut out = Uea::zero();
        // Distinct permutations of the multiset, each standing for
        // Π m_i! identical permutations.
        let mut repeat = int(1);
        for (_, mult) in m.multiplicities() {
            repeat *= factorial(mult);
        }
        let weight = repeat / factorial(k);
        let mut perm = m.indices().to_vec();
        loop {
            out.add_scaled(&self.straighten(&perm), &weight);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    }

    pub fn omega(&self, a: &SymElt<Scalar>) -> Result<Uea, EnvelopeError> {
        if a.dim() != self.dim() {
            return Err(EnvelopeError::AlgebraMismatch);
        }
        Ok(a.terms().map_linear(|m| self.omega_monomial(m)))
    }

    /// Normal words of length at most `filtration`, in degree-lex order.
    pub fn pbw_basis(&self, filtration: usize) -> Vec<PbwWord> {
        crate::symcoalg::SymBasis::new(self.dim(), filtration)
            .monomials()
            .iter()
            .map(|m| PbwWord(m.indices().to_vec()))
            .collect()
    }

    /// Filtration degree (maximal word length) of `u`.
    pub fn filtration(u: &Uea) -> usize {
        u.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// `U(f)` for a Lie map `f: g → target` given as a matrix.
    pub fn map_to(&self, target: &Envelope, f: &ExactMatrix, u: &Uea) -> Uea {
        let images: Vec<Uea> = (0..self.dim())
            .map(|j| {
                Uea::from_terms(
                    f.column(j)
                        .into_iter()
                        .enumerate()
                        .map(|(i, c)| (PbwWord::generator(i), c)),
                )
            })
            .collect();
        u.map_linear(|w| {
            let mut acc = target.one();
            for &x in w.letters() {
                acc = target.mul(&acc, &images[x]);
            }
            acc
        })
    }
}

/// Lexicographic next permutation; returns false after the last one.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A `U(g)` element bundled with its envelope; binary operations check
/// that both sides live over the same Lie algebra.
#[derive(Clone)]
pub struct UeaElt {
    env: Arc<Envelope>,
    terms: Uea,
}

impl fmt::Debug for UeaElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

impl PartialEq for UeaElt {
    fn eq(&self, other: &Self) -> bool {
        self.env.lie() == other.env.lie() && self.terms == other.terms
    }
}

impl UeaElt {
    pub fn new(env: &Arc<Envelope>, terms: Uea) -> Self {
        let terms = env.normalize(&terms);
        UeaElt {
            env: Arc::clone(env),
            terms,
        }
    }

    pub fn envelope(&self) -> &Arc<Envelope> {
        &self.env
    }

    pub fn terms(&self) -> &Uea {
        &self.terms
    }

    fn same(&self, other: &UeaElt) -> Result<(), EnvelopeError> {
        if Arc::ptr_eq(&self.env, &other.env) || self.env.lie() == other.env.lie() {
            Ok(())
        } else {
            Err(EnvelopeError::AlgebraMismatch)
        }
    }

    pub fn pbw_product(&self, other: &UeaElt) -> Result<UeaElt, EnvelopeError> {
        self.same(other)?;
        Ok(UeaElt {
            env: Arc::clone(&self.env),
            terms: self.env.mul(&self.terms, &other.terms),
        })
    }

    pub fn adjoint(&self, other: &UeaElt) -> Result<UeaElt, EnvelopeError> {
        self.same(other)?;
        Ok(UeaElt {
            env: Arc::clone(&self.env),
            terms: self.env.adjoint(&self.terms, &other.terms),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::frac;
    use crate::leibniz::catalog;
    use proptest::prelude::*;

    fn env(name: &str) -> Arc<Envelope> {
        Envelope::new(LieAlgebra::new(catalog(name).unwrap()).unwrap())
    }

    fn w(v: &[usize]) -> Uea {
        Uea::basis(PbwWord::raw(v.to_vec()))
    }

    #[test]
    fn heisenberg_straightening() {
        let e = env("heisenberg");
        let yx = e.straighten(&[1, 0]);
        let mut expected = w(&[0, 1]);
        expected.add_term(PbwWord::generator(2), int(-1));
        assert_eq!(yx, expected);
        assert_eq!(e.mul(&e.one(), &w(&[0, 2])), w(&[0, 2]));
    }

    #[test]
    fn abelian_product_is_sorted_merge() {
        let e = env("abelian3");
        assert_eq!(e.mul(&w(&[2, 2]), &w(&[0, 1])), w(&[0, 1, 2, 2]));
    }

    #[test]
    fn omega_examples() {
        let e = env("heisenberg");
        let xy = SymMonomial::new(vec![0, 1]);
        let mut expected = w(&[0, 1]);
        expected.add_term(PbwWord::generator(2), frac(-1, 2));
        assert_eq!(e.omega_monomial(&xy), expected);
        assert_eq!(e.omega_monomial(&SymMonomial::generator(1)), w(&[1]));
        // Direct average of the two orderings.
        let avg = e
            .normalize(&w(&[0, 1]).plus(&w(&[1, 0])))
            .scaled(&frac(1, 2));
        assert_eq!(e.omega_monomial(&xy), avg);
    }

    #[test]
    fn adjoint_examples() {
        let e = env("heisenberg");
        assert_eq!(e.adjoint(&e.one(), &w(&[1])), w(&[1]));
        assert_eq!(e.adjoint(&w(&[0]), &w(&[1])), w(&[2]));
        assert!(e.adjoint(&w(&[0]), &e.one()).is_zero());
    }

    #[test]
    fn hopf_identities_up_to_filtration_three() {
        for name in ["heisenberg", "sl2"] {
            let e = env(name);
            let basis = e.pbw_basis(3);
            for a in &basis {
                let ua = Uea::basis(a.clone());
                // μ(S ⊗ id)Δ = 1ε
                let mut s = Uea::zero();
                for ((l, r), c) in &e.coproduct_word(a) {
                    s.add_scaled(&e.mul(&e.antipode_word(l), &Uea::basis(r.clone())), c);
                }
                assert_eq!(s, e.one().scaled(&e.counit(&ua)), "{name} {a:?}");
                for b in basis.iter().filter(|b| a.len() + b.len() <= 3) {
                    let ub = Uea::basis(b.clone());
                    let ab = e.mul(&ua, &ub);
                    assert_eq!(
                        e.antipode(&ab),
                        e.mul(&e.antipode(&ub), &e.antipode(&ua)),
                        "{name}"
                    );
                    let lhs = e.coproduct(&ab);
                    let mut rhs = UeaTensor::zero();
                    for ((p, q), c) in &e.coproduct(&ua) {
                        for ((r, t), d) in &e.coproduct(&ub) {
                            let left = e.straighten(p.concat(r).letters());
                            let right = e.straighten(q.concat(t).letters());
                            for (x, cx) in &left {
                                for (y, cy) in &right {
                                    rhs.add_term((x.clone(), y.clone()), c * d * cx * cy);
                                }
                            }
                        }
                    }
                    assert_eq!(lhs, rhs, "{name}");
                }
            }
        }
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = UeaElt::new(&env("heisenberg"), w(&[0]));
        let b = UeaElt::new(&env("sl2"), w(&[0]));
        assert!(matches!(
            a.pbw_product(&b),
            Err(EnvelopeError::AlgebraMismatch)
        ));
        assert!(a.pbw_product(&a).is_ok());
    }

    fn arb_word() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0usize..3, 0..4)
    }

    proptest! {
        #[test]
        fn product_is_associative(a in arb_word(), b in arb_word(), c in arb_word()) {
            let e = env("sl2");
            let (a, b, c) = (e.straighten(&a), e.straighten(&b), e.straighten(&c));
            prop_assert_eq!(e.mul(&e.mul(&a, &b), &c), e.mul(&a, &e.mul(&b, &c)));
        }
    }
}
