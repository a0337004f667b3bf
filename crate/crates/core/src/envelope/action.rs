use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::foundation::{Combination, Scalar};
use crate::leibniz::{quotient_lie, LeibnizAlgebra, LieAlgebra, Quotient, Subspace};
use crate::symcoalg::{sym_map, SymElt, SymMonomial};

use super::pbw::{Envelope, PbwWord, Uea};
use super::EnvelopeError;

pub type SymComb = Combination<SymMonomial, Scalar>;

/// The data `(h, g = h/z, p, U(g))` with the `U(g)`-action on `S(h)` and
/// `Φ = ω∘S(p)`.
pub struct SymAction {
    quotient: Quotient,
    env: Arc<Envelope>,
    cache: Mutex<HashMap<(usize, SymMonomial), SymComb>>,
}

impl std::fmt::Debug for SymAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymAction")
            .field("quotient", &self.quotient)
            .finish()
    }
}

impl SymAction {
    pub fn new(h: &LeibnizAlgebra, z: &Subspace) -> Result<Arc<Self>, EnvelopeError> {
        let quotient = quotient_lie(h, z)?;
        Ok(SymAction::from_quotient(quotient))
    }

    pub fn from_quotient(quotient: Quotient) -> Arc<Self> {
        let env = Envelope::new(quotient.lie.clone());
        Arc::new(SymAction {
            quotient,
            env,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn envelope(&self) -> &Arc<Envelope> {
        &self.env
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.quotient.lie
    }

    pub fn h(&self) -> &LeibnizAlgebra {
        &self.quotient.source
    }

    pub fn h_dim(&self) -> usize {
        self.quotient.h_dim()
    }

    pub fn g_dim(&self) -> usize {
        self.quotient.g_dim()
    }

    /// `ξ_a` acting on a monomial as a derivation.
    pub fn act_generator_monomial(&self, a: usize, m: &SymMonomial) -> SymComb {
        let key = (a, m.clone());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let idx = m.indices();
        let mut out = SymComb::zero();
        for r in 0..idx.len() {
            if r > 0 && idx[r] == idx[r - 1] {
                continue;
            }
            let mult = idx.iter().filter(|&&x| x == idx[r]).count();
            let mut rest = idx.to_vec();
            rest.remove(r);
            let rest = SymMonomial::new(rest);
            let image = self.quotient.act_basis(a, &Combination::basis(idx[r]));
            for (j, c) in &image {
                out.add_term(
                    rest.times(&SymMonomial::generator(*j)),
                    c * Scalar::from_integer((mult as i64).into()),
                );
            }
        }
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, out.clone());
        out
    }

    pub fn act_generator(&self, a: usize, x: &SymComb) -> SymComb {
        x.map_linear(|m| self.act_generator_monomial(a, m))
    }

    /// `(ξ1…ξk).x = ξ1.(…(ξk.x))`.
    pub fn act_word(&self, w: &PbwWord, x: &SymComb) -> SymComb {
        let mut acc = x.clone();
        for &a in w.letters().iter().rev() {
            if acc.is_zero() {
                break;
            }
            acc = self.act_generator(a, &acc);
        }
        acc
    }

    pub fn act(&self, u: &Uea, x: &SymComb) -> SymComb {
        let mut out = SymComb::zero();
        for (w, c) in u {
            out.add_scaled(&self.act_word(w, x), c);
        }
        out
    }

    pub fn act_elt(&self, u: &Uea, x: &SymElt<Scalar>) -> Result<SymElt<Scalar>, EnvelopeError> {
        if x.dim() != self.h_dim() {
            return Err(EnvelopeError::AlgebraMismatch);
        }
        Ok(SymElt::from_combination(
            x.dim(),
            x.cap(),
            self.act(u, x.terms()),
        ))
    }

    /// `S(p)` on a monomial, landing in `S(g)`.
    pub fn project_monomial(&self, m: &SymMonomial) -> SymComb {
        let elt = SymElt::monomial(self.h_dim(), None, m.clone());
        sym_map(&self.quotient.projection, &elt)
            .expect("projection has matching dimension")
            .into_terms()
    }

    /// `Φ = ω∘S(p)` on a monomial.
    pub fn phi_monomial(&self, m: &SymMonomial) -> Uea {
        self.project_monomial(m)
            .map_linear(|n| self.env.omega_monomial(n))
    }

    pub fn phi(&self, x: &SymComb) -> Uea {
        x.map_linear(|m| self.phi_monomial(m))
    }

    /// The induced rack product `a▷b = Φ(a).b` on monomials.
    pub fn induced_product(&self, a: &SymMonomial, b: &SymMonomial) -> SymComb {
        self.act(&self.phi_monomial(a), &SymComb::basis(b.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::int;
    use crate::leibniz::{catalog, squares_ideal};

    fn sq2() -> Arc<SymAction> {
        let h = catalog("sq2").unwrap();
        SymAction::new(&h, &squares_ideal(&h)).unwrap()
    }

    fn m(v: &[usize]) -> SymMonomial {
        SymMonomial::new(v.to_vec())
    }

    #[test]
    fn generator_action_examples() {
        let s = sq2();
        assert_eq!(
            s.act_generator_monomial(0, &m(&[0])),
            SymComb::basis(m(&[1]))
        );
        assert!(s.act_generator_monomial(0, &m(&[])).is_zero());
        assert_eq!(
            s.act_generator_monomial(0, &m(&[0, 0])),
            SymComb::term(m(&[0, 1]), int(2))
        );
    }

    #[test]
    fn phi_of_unit_and_generators() {
        let s = sq2();
        assert_eq!(s.phi_monomial(&m(&[])), Uea::basis(PbwWord::one()));
        assert_eq!(s.phi_monomial(&m(&[0])), Uea::basis(PbwWord::generator(0)));
        assert!(s.phi_monomial(&m(&[1])).is_zero());
    }
}
