use std::collections::BTreeMap;
use std::sync::Arc;

use crate::envelope::{Envelope, PbwWord, SymAction, SymComb, Uea};
use crate::foundation::{Combination, Scalar, Vector};
use crate::rack::{Coalgebra, RackBialgebra, Tensor2};
use crate::symcoalg::{SymBasis, SymMonomial};

use super::LpError;

/// An element of `B⊗U(g)` with `B = S(h)_(k)`.
pub type TensorRackElt = Combination<(SymMonomial, PbwWord), Scalar>;

/// The augmented rack bialgebra `B⊗U(g)` with `Φ(b⊗u) = Φ_B(b)u` and the
/// diagonal action.
#[derive(Clone, Debug)]
pub struct TensorRack {
    action: Arc<SymAction>,
    degree_cap: usize,
    filtration_cap: usize,
}

impl TensorRack {
    pub fn new(action: Arc<SymAction>, degree_cap: usize, filtration_cap: usize) -> Self {
        TensorRack {
            action,
            degree_cap,
            filtration_cap,
        }
    }

    pub fn action(&self) -> &Arc<SymAction> {
        &self.action
    }

    pub fn envelope(&self) -> &Arc<Envelope> {
        self.action.envelope()
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn filtration_cap(&self) -> usize {
        self.filtration_cap
    }

    pub fn unit(&self) -> TensorRackElt {
        TensorRackElt::basis((SymMonomial::one(), PbwWord::one()))
    }

    /// `b⊗u` on basis elements.
    pub fn pure(&self, b: SymMonomial, u: PbwWord) -> TensorRackElt {
        TensorRackElt::basis((b, u))
    }

    pub fn check_caps(&self, x: &TensorRackElt) -> Result<(), LpError> {
        for (b, u) in x.keys() {
            if b.degree() > self.degree_cap {
                return Err(LpError::CapExceeded {
                    what: "degree",
                    found: b.degree(),
                    cap: self.degree_cap,
                });
            }
            if u.len() > self.filtration_cap {
                return Err(LpError::CapExceeded {
                    what: "filtration",
                    found: u.len(),
                    cap: self.filtration_cap,
                });
            }
        }
        Ok(())
    }

    /// `Φ(b⊗u) = Φ_B(b)u`.
    pub fn phi(&self, x: &TensorRackElt) -> Uea {
        let env = self.envelope();
        let mut out = Uea::zero();
        for ((b, u), c) in x {
            let image = env.mul(&self.action.phi_monomial(b), &Uea::basis(u.clone()));
            out.add_scaled(&image, c);
        }
        out
    }

    /// `w.(c⊗v) = Σ ℓ_{w1}(c)⊗ad_{w2}(v)`.
    pub fn act(&self, w: &Uea, y: &TensorRackElt) -> TensorRackElt {
        let env = self.envelope();
        let mut out = TensorRackElt::zero();
        for ((w1, w2), s) in &env.coproduct(w) {
            let left = Uea::basis(w1.clone());
            let right = Uea::basis(w2.clone());
            for ((c, v), d) in y {
                let l = self.action.act(&left, &SymComb::basis(c.clone()));
                let r = env.adjoint(&right, &Uea::basis(v.clone()));
                add_product(&mut out, &l, &r, &(s * d));
            }
        }
        out
    }

    /// `(b⊗u)▷′(c⊗v) = Σ ℓ_{Φ_B(b1)u1}(c) ⊗ ad_{Φ_B(b2)u2}(v)`.
    pub fn product(&self, x: &TensorRackElt, y: &TensorRackElt) -> Result<TensorRackElt, LpError> {
        self.check_caps(x)?;
        self.check_caps(y)?;
        let env = self.envelope();
        let mut out = TensorRackElt::zero();
        for ((b, u), c) in x {
            let u_split = env.coproduct_word(u);
            for (b1, b2, s) in b.splittings() {
                let (p1, p2) = (self.action.phi_monomial(&b1), self.action.phi_monomial(&b2));
                for ((u1, u2), t) in &u_split {
                    let left = env.mul(&p1, &Uea::basis(u1.clone()));
                    let right = env.mul(&p2, &Uea::basis(u2.clone()));
                    if left.is_zero() || right.is_zero() {
                        continue;
                    }
                    for ((cc, v), d) in y {
                        let l = self.action.act(&left, &SymComb::basis(cc.clone()));
                        if l.is_zero() {
                            continue;
                        }
                        let r = env.adjoint(&right, &Uea::basis(v.clone()));
                        add_product(&mut out, &l, &r, &(c * &s * t * d));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Δ(b⊗u) = Σ (b1⊗u1)⊗(b2⊗u2)`.
    pub fn coproduct(
        &self,
        x: &TensorRackElt,
    ) -> Combination<((SymMonomial, PbwWord), (SymMonomial, PbwWord)), Scalar> {
        let env = self.envelope();
        let mut out = Combination::zero();
        for ((b, u), c) in x {
            let u_split = env.coproduct_word(u);
            for (b1, b2, s) in b.splittings() {
                for ((u1, u2), t) in &u_split {
                    out.add_term(
                        ((b1.clone(), u1.clone()), (b2.clone(), u2.clone())),
                        c * &s * t,
                    );
                }
            }
        }
        out
    }

    pub fn counit(&self, x: &TensorRackElt) -> Scalar {
        x.get(&(SymMonomial::one(), PbwWord::one()))
    }

    /// Basis of `S(h)_(k) ⊗ U(g)_{≤F}`, monomials major.
    pub fn basis(&self) -> Vec<(SymMonomial, PbwWord)> {
        let sym = SymBasis::new(self.action.h_dim(), self.degree_cap);
        let words = self.envelope().pbw_basis(self.filtration_cap);
        sym.monomials()
            .iter()
            .flat_map(|m| words.iter().map(move |w| (m.clone(), w.clone())))
            .collect()
    }

    /// The finite-dimensional rack bialgebra `S(h)_(k) ⊗ U(g)_{≤F}`; both
    /// the coproduct and `▷′` preserve the truncation.
    pub fn to_rack_bialgebra(&self) -> Result<RackBialgebra, LpError> {
        let basis = self.basis();
        let lookup: BTreeMap<(SymMonomial, PbwWord), usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let index = |key: &(SymMonomial, PbwWord)| *lookup.get(key).expect("truncation is closed");
        let h_names = self.action.h().names().to_vec();
        let g_names = self.action.lie().names().to_vec();
        let labels = basis
            .iter()
            .map(|(m, w)| format!("{}⊗{}", m.render(Some(&h_names)), w.render(Some(&g_names))))
            .collect();
        let delta = basis
            .iter()
            .map(|k| {
                let mut t = Tensor2::zero();
                for ((a, b), c) in &self.coproduct(&TensorRackElt::basis(k.clone())) {
                    t.add_term((index(a), index(b)), c.clone());
                }
                t
            })
            .collect();
        let eps = basis
            .iter()
            .map(|k| self.counit(&TensorRackElt::basis(k.clone())))
            .collect();
        let unit = Vector::basis(index(&(SymMonomial::one(), PbwWord::one())));
        let coalg = Arc::new(Coalgebra::unchecked(labels, delta, eps, unit)?);
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for a in &basis {
            for b in &basis {
                let prod = self.product(
                    &TensorRackElt::basis(a.clone()),
                    &TensorRackElt::basis(b.clone()),
                )?;
                let mut v = Vector::zero();
                for (k, c) in &prod {
                    v.add_term(index(k), c.clone());
                }
                table.push(v);
            }
        }
        let n = basis.len();
        Ok(RackBialgebra::from_fn(coalg, |a, b| {
            table[a * n + b].clone()
        }))
    }
}

fn add_product(out: &mut TensorRackElt, l: &SymComb, r: &Uea, scale: &Scalar) {
    for (m, a) in l {
        for (w, b) in r {
            out.add_term((m.clone(), w.clone()), a * b * scale);
        }
    }
}

/// Renders `Σ c·(b⊗u)`.
pub fn render(action: &SymAction, x: &TensorRackElt) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let h_names = action.h().names().to_vec();
    let g_names = action.lie().names().to_vec();
    x.iter()
        .map(|((m, w), c)| {
            format!(
                "({})·{}⊗{}",
                crate::foundation::format_scalar(c),
                m.render(Some(&h_names)),
                w.render(Some(&g_names))
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
