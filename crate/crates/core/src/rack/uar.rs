use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::envelope::{Envelope, PbwWord, SymAction, SymComb};
use crate::foundation::{factorial, Combination, Scalar, Vector};
use crate::leibniz::{quotient_lie, IdealChoice, LeibnizAlgebra};
use crate::symcoalg::{SymBasis, SymMonomial};

use super::augmented::{ActionFn, AugmentedRackBialgebra};
use super::bialgebra::RackBialgebra;
use super::coalgebra::Coalgebra;
use super::RackError;

/// `UAR_(k)(h)`: the truncation `S(h)_(k)` with its rack product.
#[derive(Debug)]
pub struct Uar {
    action: Arc<SymAction>,
    basis: SymBasis,
    coalg: Arc<Coalgebra>,
    rack: RackBialgebra,
}

/// `ad^s_{e_i}` on `S(h)`, extended from `ad_{e_i}` as a derivation.
pub struct AdSym<'a> {
    h: &'a LeibnizAlgebra,
    cache: Mutex<HashMap<(usize, SymMonomial), SymComb>>,
}

impl<'a> AdSym<'a> {
    pub fn new(h: &'a LeibnizAlgebra) -> Self {
        AdSym {
            h,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn monomial(&self, i: usize, m: &SymMonomial) -> SymComb {
        let key = (i, m.clone());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let idx = m.indices();
        let mut out = SymComb::zero();
        for r in 0..idx.len() {
            let mut rest = idx.to_vec();
            rest.remove(r);
            let rest = SymMonomial::new(rest);
            for (j, c) in self.h.basis_bracket(i, idx[r]) {
                out.add_term(rest.times(&SymMonomial::generator(*j)), c.clone());
            }
        }
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, out.clone());
        out
    }

    pub fn apply(&self, i: usize, x: &SymComb) -> SymComb {
        x.map_linear(|m| self.monomial(i, m))
    }

    /// `(x₁•⋯•x_r)▷b = (1/r!) Σ_σ ad^s_{x_σ(1)}∘⋯∘ad^s_{x_σ(r)}(b)`.
    pub fn product(&self, a: &SymMonomial, b: &SymMonomial) -> SymComb {
        let r = a.degree();
        let mut letters = a.indices().to_vec();
        let weight: Scalar = a
            .multiplicities()
            .iter()
            .map(|&(_, m)| factorial(m))
            .product::<Scalar>()
            / factorial(r);
        let mut out = SymComb::zero();
        loop {
            let mut acc = SymComb::basis(b.clone());
            for &i in letters.iter().rev() {
                if acc.is_zero() {
                    break;
                }
                acc = self.apply(i, &acc);
            }
            out.add_scaled(&acc, &weight);
            if !crate::envelope::pbw::next_permutation(&mut letters) {
                break;
            }
        }
        out
    }
}

impl Uar {
    pub fn action(&self) -> &Arc<SymAction> {
        &self.action
    }

    pub fn basis(&self) -> &SymBasis {
        &self.basis
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalg
    }

    pub fn rack(&self) -> &RackBialgebra {
        &self.rack
    }

    pub fn h(&self) -> &LeibnizAlgebra {
        self.action.h()
    }

    pub fn envelope(&self) -> &Arc<Envelope> {
        self.action.envelope()
    }

    pub fn to_vector(&self, x: &SymComb) -> Vector {
        let mut v = Vector::zero();
        for (m, c) in x {
            let i = self
                .basis
                .index_of(m)
                .expect("monomial inside the truncation");
            v.add_term(i, c.clone());
        }
        v
    }

    pub fn to_sym(&self, v: &Vector) -> SymComb {
        v.iter()
            .map(|(i, c)| (self.basis.monomial(*i).clone(), c.clone()))
            .collect()
    }

    /// The augmented structure over `U(g)`, checked on PBW words of
    /// length at most `filtration`.
    pub fn augmented(&self, filtration: usize) -> AugmentedRackBialgebra<Envelope> {
        let phi = self
            .basis
            .monomials()
            .iter()
            .map(|m| self.action.phi_monomial(m))
            .collect();
        let action = Arc::clone(&self.action);
        let basis = self.basis.clone();
        let act: ActionFn<PbwWord> = Arc::new(move |w: &PbwWord, b: usize| {
            let image = action.act_word(w, &SymComb::basis(basis.monomial(b).clone()));
            let mut v = Vector::zero();
            for (m, c) in &image {
                v.add_term(
                    basis.index_of(m).expect("action preserves degree"),
                    c.clone(),
                );
            }
            v
        });
        AugmentedRackBialgebra::new(
            Arc::clone(&self.coalg),
            Arc::clone(self.action.envelope()),
            phi,
            act,
            filtration,
        )
        .expect("augmentation table matches basis")
    }

    /// `a▷b = Φ(a).b` evaluated through the `U(g)`-action.
    pub fn induced_table(&self) -> RackBialgebra {
        let basis = &self.basis;
        RackBialgebra::from_fn(Arc::clone(&self.coalg), |a, b| {
            self.to_vector(
                &self
                    .action
                    .induced_product(basis.monomial(a), basis.monomial(b)),
            )
        })
    }
}

/// Builds `UAR_(k)(h)` with `g = h/z`.
pub fn uar(h: &LeibnizAlgebra, k: usize, z: &IdealChoice) -> Result<Uar, RackError> {
    let ideal = z.resolve(h);
    let action = SymAction::from_quotient(quotient_lie(h, &ideal)?);
    let basis = SymBasis::new(h.dim(), k);
    let coalg = Arc::new(Coalgebra::symmetric(&basis, Some(h.names())));
    let ad = AdSym::new(h);
    let rack = RackBialgebra::from_fn(Arc::clone(&coalg), |a, b| {
        let image = ad.product(basis.monomial(a), basis.monomial(b));
        let mut v = Vector::zero();
        for (m, c) in &image {
            v.add_term(basis.index_of(m).expect("ad preserves degree"), c.clone());
        }
        v
    });
    Ok(Uar {
        action,
        basis,
        coalg,
        rack,
    })
}

/// Element of `S(h)_(k)` from a combination of monomials.
pub fn sym_vector(basis: &SymBasis, x: &Combination<SymMonomial, Scalar>) -> Option<Vector> {
    let mut v = Vector::zero();
    for (m, c) in x {
        v.add_term(basis.index_of(m)?, c.clone());
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leibniz::catalog;
    use crate::rack::bialgebra::verify_rack_axioms;

    fn mono(v: &[usize]) -> SymMonomial {
        SymMonomial::new(v.to_vec())
    }

    #[test]
    fn sq2_degree_one_product() {
        let u = uar(&catalog("sq2").unwrap(), 1, &IdealChoice::Squares).unwrap();
        let b = u.basis();
        let e1 = b.index_of(&mono(&[0])).unwrap();
        let e2 = b.index_of(&mono(&[1])).unwrap();
        assert_eq!(u.rack().product_basis(e1, e1), &Vector::basis(e2));
        assert!(verify_rack_axioms(u.rack()).passed());
    }

    #[test]
    fn sq2_square_acts_by_zero_on_e1() {
        let u = uar(&catalog("sq2").unwrap(), 2, &IdealChoice::Squares).unwrap();
        let b = u.basis();
        let a = b.index_of(&mono(&[0, 0])).unwrap();
        let e1 = b.index_of(&mono(&[0])).unwrap();
        assert!(u.rack().product_basis(a, e1).is_zero());
        assert_eq!(u.induced_table(), *u.rack());
    }

    #[test]
    fn abelian_gives_trivial_product() {
        let u = uar(&catalog("abelian2").unwrap(), 2, &IdealChoice::LeftCenter).unwrap();
        let t = super::super::bialgebra::trivial_product(Arc::clone(u.coalgebra())).unwrap();
        assert_eq!(*u.rack(), t);
    }
}
