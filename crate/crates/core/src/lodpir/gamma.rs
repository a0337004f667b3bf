use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::check::{witness, CheckReport, CheckResult};
use crate::envelope::{
    convolution_series, convolve, eulerian_word, f_series, g_series, PbwWord, SymAction, SymComb,
    Uea,
};
use crate::foundation::{int, Scalar, Vector};
use crate::leibniz::{hemi_over, LeibnizAlgebra};
use crate::symcoalg::{SymBasis, SymMonomial};

use super::tensor::{render, TensorRack, TensorRackElt};
use super::LpError;

/// Which series the convolution ansatz uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Series {
    F,
    G,
}

/// The maps `Γ : S(h) → (K1⊕h)⊗U(g)` and `Ψ_LP : S(h)⁺ → h⊗U(g)`.
#[derive(Debug)]
pub struct LodayPirashvili {
    target: TensorRack,
    f: Vec<Scalar>,
    g: Vec<Scalar>,
    eulerian: Mutex<HashMap<PbwWord, Uea>>,
    series: Mutex<HashMap<(Series, PbwWord), Uea>>,
}

impl LodayPirashvili {
    /// Series are expanded to `filtration_cap`, which bounds the degree of
    /// the arguments.
    pub fn new(action: Arc<SymAction>, filtration_cap: usize) -> Self {
        LodayPirashvili {
            target: TensorRack::new(action, 1, filtration_cap),
            f: f_series(filtration_cap),
            g: g_series(filtration_cap),
            eulerian: Mutex::new(HashMap::new()),
            series: Mutex::new(HashMap::new()),
        }
    }

    pub fn target(&self) -> &TensorRack {
        &self.target
    }

    pub fn action(&self) -> &Arc<SymAction> {
        self.target.action()
    }

    fn cap(&self) -> usize {
        self.target.filtration_cap()
    }

    /// `e^(1)` on a PBW word.
    pub fn eulerian(&self, w: &PbwWord) -> Uea {
        if let Some(hit) = self.eulerian.lock().expect("cache lock").get(w) {
            return hit.clone();
        }
        let out = eulerian_word(self.target.envelope(), w);
        self.eulerian
            .lock()
            .expect("cache lock")
            .insert(w.clone(), out.clone());
        out
    }

    fn series_word(&self, which: Series, w: &PbwWord) -> Uea {
        let key = (which, w.clone());
        if let Some(hit) = self.series.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let coeffs = match which {
            Series::F => &self.f,
            Series::G => &self.g,
        };
        let eul = |x: &PbwWord| self.eulerian(x);
        let out = convolution_series(self.target.envelope(), coeffs, &eul, &Uea::basis(w.clone()))
            .expect("eulerian idempotent kills 1");
        self.series
            .lock()
            .expect("cache lock")
            .insert(key, out.clone());
        out
    }

    /// `F_*(e^(1))` applied to `u`.
    pub fn f_of_eulerian(&self, u: &Uea) -> Uea {
        u.map_linear(|w| self.series_word(Series::F, w))
    }

    /// `G_*(e^(1))` applied to `u`.
    pub fn g_of_eulerian(&self, u: &Uea) -> Uea {
        u.map_linear(|w| self.series_word(Series::G, w))
    }

    fn check_degree(&self, a: &SymComb) -> Result<(), LpError> {
        for m in a.keys() {
            if m.degree() > self.cap() {
                return Err(LpError::CapExceeded {
                    what: "degree",
                    found: m.degree(),
                    cap: self.cap(),
                });
            }
        }
        Ok(())
    }

    fn ansatz(&self, a: &SymComb, which: Series, with_unit: bool) -> TensorRackElt {
        let mut out = TensorRackElt::zero();
        for (m, c) in a {
            for (m1, m2, s) in m.splittings() {
                let keep = match m1.degree() {
                    0 => with_unit,
                    1 => true,
                    _ => false,
                };
                if !keep {
                    continue;
                }
                let phi = self.action().phi_monomial(&m2);
                let image = phi.map_linear(|w| self.series_word(which, w));
                for (w, d) in &image {
                    out.add_term((m1.clone(), w.clone()), c * &s * d);
                }
            }
        }
        out
    }

    /// `Γ = ((1ε + pr) ⊗ (F_*(e^(1))∘Φ))∘Δ`.
    pub fn gamma(&self, a: &SymComb) -> Result<TensorRackElt, LpError> {
        self.check_degree(a)?;
        Ok(self.ansatz(a, Series::F, true))
    }

    /// `Ψ_LP = (pr ⊗ (G_*(e^(1))∘Φ))∘Δ` on the augmentation ideal.
    pub fn psi_lp(&self, a: &SymComb) -> Result<TensorRackElt, LpError> {
        let eps = a.get(&SymMonomial::one());
        if eps != int(0) {
            return Err(LpError::NotAugmentationIdeal);
        }
        self.check_degree(a)?;
        Ok(self.ansatz(a, Series::G, false))
    }

    /// The rack product of `S(h)`, `a▷b = Φ(a).b`.
    pub fn source_product(&self, a: &SymMonomial, b: &SymMonomial) -> SymComb {
        self.action().induced_product(a, b)
    }

    fn render_sym(&self, a: &SymComb) -> String {
        let names = self.action().h().names().to_vec();
        if a.is_zero() {
            return "0".into();
        }
        a.iter()
            .map(|(m, c)| {
                format!(
                    "({})·{}",
                    crate::foundation::format_scalar(c),
                    m.render(Some(&names))
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn render_uea(&self, u: &Uea) -> String {
        let names = self.action().lie().names().to_vec();
        if u.is_zero() {
            return "0".into();
        }
        u.iter()
            .map(|(w, c)| {
                format!(
                    "({})·{}",
                    crate::foundation::format_scalar(c),
                    w.render(Some(&names))
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `(1ε + e^(1)) * F_*(e^(1)) = id` on PBW words up to `filtration`.
    pub fn f_identity_check(&self, filtration: usize) -> CheckResult {
        let env = self.target.envelope();
        let left = |w: &PbwWord| {
            if w.is_empty() {
                env.one()
            } else {
                self.eulerian(w)
            }
        };
        let right = |w: &PbwWord| self.series_word(Series::F, w);
        let mut res = CheckResult::new("f_defining_identity");
        for w in env.pbw_basis(filtration.min(self.cap())) {
            let u = Uea::basis(w.clone());
            let lhs = convolve(env, &left, &right, &u);
            res.record(lhs == u, || {
                witness(
                    vec![self.render_uea(&u)],
                    self.render_uea(&lhs),
                    self.render_uea(&u),
                )
            });
        }
        res
    }

    /// Γ and Ψ_LP properties on monomials of degree at most `degree` and
    /// PBW words of length at most `word_filtration`.
    pub fn verify(&self, degree: usize, word_filtration: usize) -> Result<CheckReport, LpError> {
        let basis = SymBasis::new(self.action().h_dim(), degree);
        let monomials = basis.monomials();
        let env = self.target.envelope();
        let words = env.pbw_basis(word_filtration);
        let mut report = CheckReport::default();
        report.push(self.f_identity_check(3));

        let mut unit = CheckResult::new("gamma_unit");
        let g1 = self.gamma(&SymComb::basis(SymMonomial::one()))?;
        unit.record(g1 == self.target.unit(), || {
            witness(vec!["1".into()], render(self.action(), &g1), "1⊗1".into())
        });
        report.push(unit);

        let mut phi = CheckResult::new("gamma_phi_compatible");
        let mut gammas = Vec::with_capacity(monomials.len());
        for m in monomials {
            let a = SymComb::basis(m.clone());
            let g = self.gamma(&a)?;
            let lhs = self.target.phi(&g);
            let rhs = self.action().phi_monomial(m);
            phi.record(lhs == rhs, || {
                witness(
                    vec![self.render_sym(&a)],
                    self.render_uea(&lhs),
                    self.render_uea(&rhs),
                )
            });
            gammas.push(g);
        }
        report.push(phi);

        let mut module = CheckResult::new("gamma_module_map");
        for w in &words {
            let u = Uea::basis(w.clone());
            for (i, m) in monomials.iter().enumerate() {
                let moved = self.action().act(&u, &SymComb::basis(m.clone()));
                let lhs = self.gamma(&moved)?;
                let rhs = self.target.act(&u, &gammas[i]);
                module.record(lhs == rhs, || {
                    witness(
                        vec![
                            self.render_uea(&u),
                            self.render_sym(&SymComb::basis(m.clone())),
                        ],
                        render(self.action(), &lhs),
                        render(self.action(), &rhs),
                    )
                });
            }
        }
        report.push(module);

        let mut morphism = CheckResult::new("gamma_morphism");
        let mut psi_morphism = CheckResult::new("psi_lp_morphism");
        let mut psi_range = CheckResult::new("psi_lp_in_h_tensor_u");
        for (i, a) in monomials.iter().enumerate() {
            if !a.is_one() {
                let p = self.psi_lp(&SymComb::basis(a.clone()))?;
                let bad = p.keys().any(|(m, _)| m.is_one());
                psi_range.record(!bad, || {
                    witness(
                        vec![a.render(Some(self.action().h().names()))],
                        render(self.action(), &p),
                        "h⊗U(g)".into(),
                    )
                });
            }
            for (j, b) in monomials.iter().enumerate() {
                let prod = self.source_product(a, b);
                let lhs = self.gamma(&prod)?;
                let rhs = self.target.product(&gammas[i], &gammas[j])?;
                let names = self.action().h().names().to_vec();
                let pair = || vec![a.render(Some(&names)), b.render(Some(&names))];
                morphism.record(lhs == rhs, || {
                    witness(
                        pair(),
                        render(self.action(), &lhs),
                        render(self.action(), &rhs),
                    )
                });
                if a.is_one() || b.is_one() {
                    continue;
                }
                let lhs = self.psi_lp(&prod)?;
                let rhs = self.target.product(
                    &self.psi_lp(&SymComb::basis(a.clone()))?,
                    &self.psi_lp(&SymComb::basis(b.clone()))?,
                )?;
                psi_morphism.record(lhs == rhs, || {
                    witness(
                        pair(),
                        render(self.action(), &lhs),
                        render(self.action(), &rhs),
                    )
                });
            }
        }
        report.push(morphism);
        report.push(psi_morphism);
        report.push(psi_range);
        report.push(lp_subalgebra(&self.target, word_filtration)?);
        report.push(hemi_primitives(&self.target)?);
        Ok(report)
    }
}

/// `h⊗U(g)` is closed under `▷′` on basis elements with words of length at
/// most `filtration`.
pub fn lp_subalgebra(t: &TensorRack, filtration: usize) -> Result<CheckResult, LpError> {
    let n = t.action().h_dim();
    let words = t.envelope().pbw_basis(filtration);
    let mut res = CheckResult::new("lp_subalgebra");
    let elts: Vec<TensorRackElt> = (0..n)
        .flat_map(|i| words.iter().map(move |w| (i, w.clone())))
        .map(|(i, w)| t.pure(SymMonomial::generator(i), w))
        .collect();
    for x in &elts {
        for y in &elts {
            let p = t.product(x, y)?;
            let bad = p.keys().any(|(m, _)| m.degree() != 1);
            res.record(!bad, || {
                witness(
                    vec![render(t.action(), x), render(t.action(), y)],
                    render(t.action(), &p),
                    "h⊗U(g)".into(),
                )
            });
        }
    }
    Ok(res)
}

/// The bracket `P▷′Q` on primitives `x⊗1`, `1⊗ξ`, transported along
/// `(x, ξ) ↦ (x, ξ + p(x))`, equals the hemi-semidirect bracket.
pub fn hemi_primitives(t: &TensorRack) -> Result<CheckResult, LpError> {
    let action = t.action();
    let q = action.quotient();
    let hemi: LeibnizAlgebra = hemi_over(q)?;
    let n = q.h_dim();
    let m = q.g_dim();
    let primitive = |i: usize| {
        if i < n {
            t.pure(SymMonomial::generator(i), PbwWord::one())
        } else {
            t.pure(SymMonomial::one(), PbwWord::generator(i - n))
        }
    };
    let coords = |x: &TensorRackElt| -> Option<Vector> {
        let mut v = Vector::zero();
        for ((mono, w), c) in x {
            match (mono.degree(), w.len()) {
                (1, 0) => v.add_term(mono.indices()[0], c.clone()),
                (0, 1) => v.add_term(n + w.letters()[0], c.clone()),
                _ => return None,
            }
        }
        Some(v)
    };
    let transport = |v: &Vector| {
        let mut out = v.clone();
        for (i, c) in v {
            if *i < n {
                for (a, d) in &q.project_basis(*i) {
                    out.add_term(n + a, c * d);
                }
            }
        }
        out
    };
    let mut res = CheckResult::new("hemi_primitives");
    for i in 0..n + m {
        for j in 0..n + m {
            let prod = t.product(&primitive(i), &primitive(j))?;
            let lhs = coords(&prod).map(|v| transport(&v));
            let rhs = hemi.bracket(&transport(&Vector::basis(i)), &transport(&Vector::basis(j)));
            let ok = lhs.as_ref() == Some(&rhs);
            res.record(ok, || {
                witness(
                    vec![hemi.names()[i].clone(), hemi.names()[j].clone()],
                    lhs.map(|v| format!("{v:?}"))
                        .unwrap_or_else(|| render(action, &prod)),
                    format!("{rhs:?}"),
                )
            });
        }
    }
    Ok(res)
}
