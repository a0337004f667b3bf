use std::collections::BTreeMap;
use std::sync::Arc;

use crate::check::{map_indices, witness, CheckReport, CheckResult};
use crate::foundation::{Combination, Scalar, Vector};

use super::bialgebra::RackBialgebra;
use super::coalgebra::{Coalgebra, Tensor2};
use super::finite::{augmentation_equivariance, FiniteGroup, FiniteRack};
use super::hopf::HopfAlgebra;
use super::RackError;

/// `ℓ(h, b)` for a Hopf basis element `h` and a coalgebra basis index `b`.
pub type ActionFn<E> = Arc<dyn Fn(&E, usize) -> Vector + Send + Sync>;

/// A coalgebra `B` with a coalgebra map `Φ: B → H` into a cocommutative
/// Hopf algebra and an `H`-module-coalgebra action on `B`.
pub struct AugmentedRackBialgebra<H: HopfAlgebra> {
    coalg: Arc<Coalgebra>,
    hopf: Arc<H>,
    phi: Vec<Combination<H::Elem, Scalar>>,
    action: ActionFn<H::Elem>,
    filtration: usize,
}

impl<H: HopfAlgebra> Clone for AugmentedRackBialgebra<H> {
    fn clone(&self) -> Self {
        AugmentedRackBialgebra {
            coalg: Arc::clone(&self.coalg),
            hopf: Arc::clone(&self.hopf),
            phi: self.phi.clone(),
            action: Arc::clone(&self.action),
            filtration: self.filtration,
        }
    }
}

type HB<E> = Combination<(E, usize), Scalar>;

impl<H: HopfAlgebra> AugmentedRackBialgebra<H> {
    /// `filtration` bounds the Hopf basis elements used by the checks.
    pub fn new(
        coalg: Arc<Coalgebra>,
        hopf: Arc<H>,
        phi: Vec<Combination<H::Elem, Scalar>>,
        action: ActionFn<H::Elem>,
        filtration: usize,
    ) -> Result<Self, RackError> {
        if phi.len() != coalg.dim() {
            return Err(RackError::MalformedCoalgebra(
                "augmentation table has wrong length".into(),
            ));
        }
        Ok(AugmentedRackBialgebra {
            coalg,
            hopf,
            phi,
            action,
            filtration,
        })
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalg
    }

    pub fn hopf(&self) -> &Arc<H> {
        &self.hopf
    }

    pub fn phi(&self, b: usize) -> &Combination<H::Elem, Scalar> {
        &self.phi[b]
    }

    pub fn filtration(&self) -> usize {
        self.filtration
    }

    /// Same structure with a different augmentation (for mutation tests).
    pub fn with_phi(&self, phi: Vec<Combination<H::Elem, Scalar>>) -> Self {
        AugmentedRackBialgebra {
            phi,
            ..self.clone()
        }
    }

    pub fn act(&self, h: &H::Elem, v: &Vector) -> Vector {
        v.map_linear(|b| (self.action)(h, *b))
    }

    pub fn act_comb(&self, u: &Combination<H::Elem, Scalar>, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (h, c) in u {
            out.add_scaled(&self.act(h, v), c);
        }
        out
    }

    pub fn phi_vec(&self, v: &Vector) -> Combination<H::Elem, Scalar> {
        v.map_linear(|b| self.phi[*b].clone())
    }

    /// `a▷b = Φ(a).b`.
    pub fn induced_rack_product(&self) -> RackBialgebra {
        RackBialgebra::from_fn(Arc::clone(&self.coalg), |a, b| {
            self.act_comb(&self.phi[a], &Vector::basis(b))
        })
    }

    fn sample(&self) -> Vec<H::Elem> {
        self.hopf.sample_basis(self.filtration)
    }

    fn render_hb(&self, x: &HB<H::Elem>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.iter()
            .map(|((h, b), c)| {
                format!(
                    "({})*{}⊗{}",
                    crate::foundation::format_scalar(c),
                    self.hopf.render(h),
                    self.coalg.label(*b)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Axioms of an augmented rack bialgebra, on the sampled Hopf basis.
    pub fn verify_structure(&self) -> CheckReport {
        let hopf = &self.hopf;
        let c = &self.coalg;
        let n = c.dim();
        let sample = self.sample();
        let mut report = CheckReport::default();

        let mut phi_morph = CheckResult::new("phi_coalgebra_morphism");
        for b in 0..n {
            let pb = &self.phi[b];
            let mut lhs: Combination<(H::Elem, H::Elem), Scalar> = Combination::zero();
            for (h, s) in pb {
                lhs.add_scaled(&hopf.coproduct(h), s);
            }
            let mut rhs = Combination::zero();
            for ((x, y), s) in c.delta(b) {
                for (p, u) in &self.phi[*x] {
                    for (q, v) in &self.phi[*y] {
                        rhs.add_term((p.clone(), q.clone()), s * u * v);
                    }
                }
            }
            let eps_h: Scalar = pb.iter().map(|(h, s)| hopf.counit(h) * s).sum();
            phi_morph.record(lhs == rhs && &eps_h == c.eps(b), || {
                witness(
                    vec![c.label(b).into()],
                    format!("{lhs:?}"),
                    format!("{rhs:?}"),
                )
            });
        }
        let phi_one = self.phi_vec(c.unit());
        phi_morph.record(phi_one == Combination::basis(hopf.one()), || {
            witness(vec!["1".into()], hopf.render_comb(&phi_one), "1".into())
        });
        report.push(phi_morph);

        let mut unit_acts = CheckResult::new("action_unit");
        for b in 0..n {
            let e = Vector::basis(b);
            let lhs = self.act(&hopf.one(), &e);
            unit_acts.record(lhs == e, || {
                witness(vec![c.label(b).into()], c.render(&lhs), c.render(&e))
            });
        }
        report.push(unit_acts);

        let assoc = map_indices(sample.len() * sample.len(), |t| {
            let (h, k) = (&sample[t / sample.len()], &sample[t % sample.len()]);
            let hk = hopf.mul(h, k);
            (0..n).find_map(|b| {
                let e = Vector::basis(b);
                let lhs = self.act(h, &self.act(k, &e));
                let rhs = self.act_comb(&hk, &e);
                (lhs != rhs).then(|| {
                    witness(
                        vec![hopf.render(h), hopf.render(k), c.label(b).into()],
                        c.render(&lhs),
                        c.render(&rhs),
                    )
                })
            })
        });
        report.push(CheckResult::from_outcomes("action_associative", assoc));

        let per_h = map_indices(sample.len(), |i| {
            let h = &sample[i];
            let dh = hopf.coproduct(h);
            let mut mc = Vec::new();
            let mut on_one = None;
            let mut inter = Vec::new();
            for b in 0..n {
                let hb = self.act(h, &Vector::basis(b));
                let lhs = c.delta_vec(&hb);
                let mut rhs = Tensor2::zero();
                for ((h1, h2), s) in &dh {
                    for ((b1, b2), u) in c.delta(b) {
                        let x = self.act(h1, &Vector::basis(*b1));
                        let y = self.act(h2, &Vector::basis(*b2));
                        for (p, v) in &x {
                            for (q, w) in &y {
                                rhs.add_term((*p, *q), s * u * v * w);
                            }
                        }
                    }
                }
                let eps_ok = c.eps_vec(&hb) == hopf.counit(h) * c.eps(b);
                mc.push((lhs != rhs || !eps_ok).then(|| {
                    witness(
                        vec![hopf.render(h), c.label(b).into()],
                        c.render_tensor(&lhs),
                        c.render_tensor(&rhs),
                    )
                }));
                let lhs = self.phi_vec(&hb);
                let rhs = hopf.adjoint(h, &self.phi[b]);
                inter.push((lhs != rhs).then(|| {
                    witness(
                        vec![hopf.render(h), c.label(b).into()],
                        hopf.render_comb(&lhs),
                        hopf.render_comb(&rhs),
                    )
                }));
            }
            let h1 = self.act(h, c.unit());
            let expected = c.unit().scaled(&hopf.counit(h));
            if h1 != expected {
                on_one = Some(witness(
                    vec![hopf.render(h), "1".into()],
                    c.render(&h1),
                    c.render(&expected),
                ));
            }
            (mc, on_one, inter)
        });
        let mut module_coalg = CheckResult::new("module_coalgebra");
        let mut acts_on_one = CheckResult::new("action_on_unit");
        let mut intertwines = CheckResult::new("phi_intertwines_adjoint");
        for (mc, one, inter) in per_h {
            mc.into_iter().for_each(|o| module_coalg.absorb(o));
            acts_on_one.absorb(one);
            inter.into_iter().for_each(|o| intertwines.absorb(o));
        }
        report.push(module_coalg);
        report.push(acts_on_one);
        report.push(intertwines);
        report
    }

    fn is_cocommutative(&self) -> bool {
        self.coalg.is_cocommutative()
            && self.sample().iter().all(|h| {
                let d = self.hopf.coproduct(h);
                let swapped: Combination<(H::Elem, H::Elem), Scalar> =
                    d.map_linear(|(a, b)| Combination::basis((b.clone(), a.clone())));
                swapped == d
            })
    }

    /// Coaction `ρ(b) = Σ Φ(b1) ⊗ b2`.
    pub fn coaction(&self, v: &Vector) -> HB<H::Elem> {
        let d = self.coalg.delta_vec(v);
        let mut out = HB::zero();
        for ((b1, b2), s) in &d {
            for (h, u) in &self.phi[*b1] {
                out.add_term((h.clone(), *b2), s * u);
            }
        }
        out
    }

    /// `Σ (h.b)_(−1) ⊗ (h.b)_(0) = Σ h1 b_(−1) S(h3) ⊗ h2.b_(0)` on sampled
    /// Hopf basis elements and all coalgebra basis elements.
    pub fn yd_check(&self) -> Result<CheckResult, RackError> {
        if !self.is_cocommutative() {
            return Err(RackError::NotCocommutative);
        }
        let hopf = &self.hopf;
        let c = &self.coalg;
        let n = c.dim();
        let sample = self.sample();
        let outcomes = map_indices(sample.len() * n, |t| {
            let h = &sample[t / n];
            let b = t % n;
            let e = Vector::basis(b);
            let lhs = self.coaction(&self.act(h, &e));
            let rho = self.coaction(&e);
            let mut d3: BTreeMap<(H::Elem, H::Elem, H::Elem), Scalar> = BTreeMap::new();
            for ((h1, h23), s) in &hopf.coproduct(h) {
                for ((h2, h3), u) in &hopf.coproduct(h23) {
                    *d3.entry((h1.clone(), h2.clone(), h3.clone()))
                        .or_insert_with(|| Scalar::from_integer(0.into())) += s * u;
                }
            }
            let mut rhs = HB::zero();
            for ((h1, h2, h3), s) in &d3 {
                for ((x, b0), u) in &rho {
                    let left = hopf.mul(h1, x);
                    let hx = hopf.mul_comb(&left, &hopf.antipode(h3));
                    let acted = self.act(h2, &Vector::basis(*b0));
                    for (p, v) in &hx {
                        for (q, w) in &acted {
                            rhs.add_term((p.clone(), *q), s * u * v * w);
                        }
                    }
                }
            }
            (lhs != rhs).then(|| {
                witness(
                    vec![hopf.render(h), c.label(b).into()],
                    self.render_hb(&lhs),
                    self.render_hb(&rhs),
                )
            })
        });
        Ok(CheckResult::from_outcomes("yetter_drinfeld", outcomes))
    }
}

/// `K[X]` augmented over `K[G]` by `p: X → G` and an action `act[g][x]`.
/// The rack product of `X` must be `x▷y = p(x).y`.
pub fn from_augmented_rack(
    x: &FiniteRack,
    g: Arc<FiniteGroup>,
    p: Vec<usize>,
    act: Vec<Vec<usize>>,
) -> Result<AugmentedRackBialgebra<FiniteGroup>, RackError> {
    if p.len() != x.size() || act.len() != g.order() || act.iter().any(|r| r.len() != x.size()) {
        return Err(RackError::NotEquivariantAugmentation("table shapes".into()));
    }
    let eq = augmentation_equivariance(&g, &p, &act);
    if !eq.passed() {
        return Err(RackError::NotEquivariantAugmentation(
            eq.first().map(|w| w.to_string()).unwrap_or_default(),
        ));
    }
    for a in 0..x.size() {
        for b in 0..x.size() {
            if act[p[a]][b] != x.op(a, b) {
                return Err(RackError::NotEquivariantAugmentation(format!(
                    "p({a}).{b} differs from {a}▷{b}"
                )));
            }
        }
    }
    let kx = super::finite::from_finite_rack(x);
    let phi = p.iter().map(|&h| Combination::basis(h)).collect();
    let action: ActionFn<usize> = Arc::new(move |h: &usize, b: usize| Vector::basis(act[*h][b]));
    AugmentedRackBialgebra::new(Arc::clone(kx.coalgebra()), g, phi, action, 0)
}

/// `(H, id, H, ad)` restricted to the sampled basis of `H`, which must span
/// a subcoalgebra stable under the adjoint action.
pub fn hopf_adjoint<H: HopfAlgebra + 'static>(
    hopf: Arc<H>,
    filtration: usize,
) -> Result<AugmentedRackBialgebra<H>, RackError>
where
    H::Elem: 'static,
{
    let basis = hopf.sample_basis(filtration);
    let index: BTreeMap<H::Elem, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let to_vec = |x: &Combination<H::Elem, Scalar>| -> Result<Vector, RackError> {
        let mut v = Vector::zero();
        for (e, c) in x {
            let i = index.get(e).ok_or_else(|| {
                RackError::MalformedCoalgebra("sampled basis is not closed".into())
            })?;
            v.add_term(*i, c.clone());
        }
        Ok(v)
    };
    let mut delta = Vec::new();
    for e in &basis {
        let mut t = Tensor2::zero();
        for ((a, b), c) in &hopf.coproduct(e) {
            let (i, j) = match (index.get(a), index.get(b)) {
                (Some(i), Some(j)) => (*i, *j),
                _ => {
                    return Err(RackError::MalformedCoalgebra(
                        "sampled basis is not a subcoalgebra".into(),
                    ))
                }
            };
            t.add_term((i, j), c.clone());
        }
        delta.push(t);
    }
    let eps = basis.iter().map(|e| hopf.counit(e)).collect();
    let unit = to_vec(&Combination::basis(hopf.one()))?;
    let labels = basis.iter().map(|e| hopf.render(e)).collect();
    let coalg = Arc::new(Coalgebra::new(labels, delta, eps, unit)?);
    let mut table: BTreeMap<(H::Elem, usize), Vector> = BTreeMap::new();
    for h in &basis {
        for (j, e) in basis.iter().enumerate() {
            let img = hopf.adjoint(h, &Combination::basis(e.clone()));
            table.insert((h.clone(), j), to_vec(&img)?);
        }
    }
    let hopf_for_action = Arc::clone(&hopf);
    let basis_for_action = basis.clone();
    let action: ActionFn<H::Elem> = Arc::new(move |h: &H::Elem, b: usize| {
        if let Some(v) = table.get(&(h.clone(), b)) {
            return v.clone();
        }
        let img = hopf_for_action.adjoint(h, &Combination::basis(basis_for_action[b].clone()));
        let mut v = Vector::zero();
        for (e, c) in &img {
            let i = basis_for_action
                .iter()
                .position(|x| x == e)
                .expect("adjoint action preserves the sampled basis");
            v.add_term(i, c.clone());
        }
        v
    });
    let phi = basis
        .iter()
        .map(|e| Combination::basis(e.clone()))
        .collect();
    AugmentedRackBialgebra::new(coalg, hopf, phi, action, filtration)
}
