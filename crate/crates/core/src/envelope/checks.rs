//! Exhaustive checks of the Hopf structure of `U(g)`, of `ω`, and of the
//! `U(g)`-action on `S(h)` on truncated bases.

use crate::check::{witness, CheckReport, CheckResult};
use crate::foundation::{format_scalar, int, Combination, Scalar};
use crate::rack::AdSym;
use crate::symcoalg::{SymBasis, SymMonomial};

use super::action::{SymAction, SymComb};
use super::pbw::{Envelope, PbwWord, Uea, UeaTensor};
use super::series::eulerian;

type SymTensorComb = Combination<(SymMonomial, SymMonomial), Scalar>;

/// Renders `Σ c·w` with the basis names of `g`.
pub fn render_uea(env: &Envelope, u: &Uea) -> String {
    if u.is_zero() {
        return "0".into();
    }
    let names = env.lie().as_leibniz().names();
    u.iter()
        .map(|(w, c)| format!("({})·{}", format_scalar(c), w.render(Some(names))))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn render_tensor(env: &Envelope, t: &UeaTensor) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let names = env.lie().as_leibniz().names();
    t.iter()
        .map(|((a, b), c)| {
            format!(
                "({})·{}⊗{}",
                format_scalar(c),
                a.render(Some(names)),
                b.render(Some(names))
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn render_sym(names: &[String], x: &SymComb) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter()
        .map(|(m, c)| format!("({})·{}", format_scalar(c), m.render(Some(names))))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn render_sym_tensor(names: &[String], t: &SymTensorComb) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.iter()
        .map(|((a, b), c)| {
            format!(
                "({})·{}⊗{}",
                format_scalar(c),
                a.render(Some(names)),
                b.render(Some(names))
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn tensor_of(a: &Uea, b: &Uea) -> UeaTensor {
    let mut out = UeaTensor::zero();
    for (x, c) in a {
        for (y, d) in b {
            out.add_term((x.clone(), y.clone()), c * d);
        }
    }
    out
}

fn tensor_mul(env: &Envelope, s: &UeaTensor, t: &UeaTensor) -> UeaTensor {
    let mut out = UeaTensor::zero();
    for ((a1, a2), c) in s {
        for ((b1, b2), d) in t {
            let left = env.mul(&Uea::basis(a1.clone()), &Uea::basis(b1.clone()));
            let right = env.mul(&Uea::basis(a2.clone()), &Uea::basis(b2.clone()));
            out.add_scaled(&tensor_of(&left, &right), &(c * d));
        }
    }
    out
}

fn sym_coproduct(x: &SymComb) -> SymTensorComb {
    let mut out = SymTensorComb::zero();
    for (m, c) in x {
        for (a, b, s) in m.splittings() {
            out.add_term((a, b), c * &s);
        }
    }
    out
}

/// `Δ(uv) = Δ(u)Δ(v)` on pairs of normal words of length ≤ `filtration`.
pub fn coproduct_multiplicative(env: &Envelope, filtration: usize) -> CheckResult {
    let words = env.pbw_basis(filtration);
    let names = env.lie().as_leibniz().names().to_vec();
    let mut res = CheckResult::new("coproduct_multiplicative");
    for u in &words {
        for v in &words {
            let (bu, bv) = (Uea::basis(u.clone()), Uea::basis(v.clone()));
            let lhs = env.coproduct(&env.mul(&bu, &bv));
            let rhs = tensor_mul(env, &env.coproduct(&bu), &env.coproduct(&bv));
            res.record(lhs == rhs, || {
                witness(
                    vec![u.render(Some(&names)), v.render(Some(&names))],
                    render_tensor(env, &lhs),
                    render_tensor(env, &rhs),
                )
            });
        }
    }
    res
}

/// `S(uv) = S(v)S(u)` and `μ∘(S⊗id)∘Δ = 1ε` on normal words.
pub fn antipode_laws(env: &Envelope, filtration: usize) -> CheckReport {
    let words = env.pbw_basis(filtration);
    let names = env.lie().as_leibniz().names().to_vec();
    let mut anti = CheckResult::new("antipode_anti_multiplicative");
    for u in &words {
        for v in &words {
            let (bu, bv) = (Uea::basis(u.clone()), Uea::basis(v.clone()));
            let lhs = env.antipode(&env.mul(&bu, &bv));
            let rhs = env.mul(&env.antipode(&bv), &env.antipode(&bu));
            anti.record(lhs == rhs, || {
                witness(
                    vec![u.render(Some(&names)), v.render(Some(&names))],
                    render_uea(env, &lhs),
                    render_uea(env, &rhs),
                )
            });
        }
    }
    let mut unit = CheckResult::new("antipode_identity");
    for u in &words {
        let mut lhs = Uea::zero();
        for ((a, b), c) in &env.coproduct_word(u) {
            let term = env.mul(&env.antipode_word(a), &Uea::basis(b.clone()));
            lhs.add_scaled(&term, c);
        }
        let rhs = env.one().scaled(&env.counit(&Uea::basis(u.clone())));
        unit.record(lhs == rhs, || {
            witness(
                vec![u.render(Some(&names))],
                render_uea(env, &lhs),
                render_uea(env, &rhs),
            )
        });
    }
    CheckReport {
        checks: vec![anti, unit],
    }
}

/// `Δ_U∘ω = (ω⊗ω)∘Δ_S` on monomials of `S(g)` of degree ≤ `filtration`.
pub fn omega_coalgebra(env: &Envelope, filtration: usize) -> CheckResult {
    let basis = SymBasis::new(env.dim(), filtration);
    let names = env.lie().as_leibniz().names().to_vec();
    let mut res = CheckResult::new("omega_coalgebra_morphism");
    for m in basis.monomials() {
        let lhs = env.coproduct(&env.omega_monomial(m));
        let mut rhs = UeaTensor::zero();
        for (a, b, s) in m.splittings() {
            rhs.add_scaled(
                &tensor_of(&env.omega_monomial(&a), &env.omega_monomial(&b)),
                &s,
            );
        }
        res.record(lhs == rhs, || {
            witness(
                vec![m.render(Some(&names))],
                render_tensor(env, &lhs),
                render_tensor(env, &rhs),
            )
        });
    }
    res
}

/// `ω(ξ.a) = ad_ξ(ω(a))` for basis vectors `ξ` and monomials `a` of degree
/// ≤ `filtration`.
pub fn omega_module(env: &Envelope, filtration: usize) -> CheckResult {
    let g = env.lie().as_leibniz();
    let ad = AdSym::new(g);
    let basis = SymBasis::new(env.dim(), filtration);
    let names = g.names().to_vec();
    let mut res = CheckResult::new("omega_module_morphism");
    for m in basis.monomials() {
        for i in 0..env.dim() {
            let lhs = ad.monomial(i, m).map_linear(|n| env.omega_monomial(n));
            let rhs = env.adjoint(&env.generator(i), &env.omega_monomial(m));
            res.record(lhs == rhs, || {
                witness(
                    vec![names[i].clone(), m.render(Some(&names))],
                    render_uea(env, &lhs),
                    render_uea(env, &rhs),
                )
            });
        }
    }
    res
}

/// `e^(1)∘ω = pr` on monomials of degree ≤ `filtration`.
pub fn eulerian_projection(env: &Envelope, filtration: usize) -> CheckResult {
    let basis = SymBasis::new(env.dim(), filtration);
    let names = env.lie().as_leibniz().names().to_vec();
    let mut res = CheckResult::new("eulerian_after_omega");
    for m in basis.monomials() {
        let lhs = eulerian(env, &env.omega_monomial(m));
        let rhs = if m.degree() == 1 {
            Uea::basis(PbwWord::generator(m.indices()[0]))
        } else {
            Uea::zero()
        };
        res.record(lhs == rhs, || {
            witness(
                vec![m.render(Some(&names))],
                render_uea(env, &lhs),
                render_uea(env, &rhs),
            )
        });
    }
    res
}

/// Module-coalgebra laws and `Φ(u.a) = ad_u(Φ(a))` for normal words `u` of
/// length ≤ `filtration` and monomials `a` of degree ≤ `degree`.
pub fn action_laws(action: &SymAction, degree: usize, filtration: usize) -> CheckReport {
    let env = action.envelope();
    let h_names = action.h().names().to_vec();
    let g_names = action.lie().as_leibniz().names().to_vec();
    let words = env.pbw_basis(filtration);
    let monomials = SymBasis::new(action.h_dim(), degree);
    let mut coalg = CheckResult::new("module_coalgebra");
    let mut unit = CheckResult::new("action_on_unit");
    let mut phi = CheckResult::new("phi_intertwines_adjoint");
    for u in &words {
        let bu = Uea::basis(u.clone());
        let on_one = action.act_word(u, &SymComb::basis(SymMonomial::one()));
        let expected = SymComb::basis(SymMonomial::one()).scaled(&env.counit(&bu));
        unit.record(on_one == expected, || {
            witness(
                vec![u.render(Some(&g_names))],
                render_sym(&h_names, &on_one),
                render_sym(&h_names, &expected),
            )
        });
        let split = env.coproduct_word(u);
        for m in monomials.monomials() {
            let x = SymComb::basis(m.clone());
            let ux = action.act_word(u, &x);
            let lhs = sym_coproduct(&ux);
            let mut rhs = SymTensorComb::zero();
            for ((u1, u2), t) in &split {
                for (a, b, s) in m.splittings() {
                    let left = action.act_word(u1, &SymComb::basis(a));
                    let right = action.act_word(u2, &SymComb::basis(b));
                    for (p, c) in &left {
                        for (q, d) in &right {
                            rhs.add_term((p.clone(), q.clone()), c * d * t * &s);
                        }
                    }
                }
            }
            let tuple = || vec![u.render(Some(&g_names)), m.render(Some(&h_names))];
            coalg.record(lhs == rhs, || {
                witness(
                    tuple(),
                    render_sym_tensor(&h_names, &lhs),
                    render_sym_tensor(&h_names, &rhs),
                )
            });
            let p_lhs = action.phi(&ux);
            let p_rhs = env.adjoint(&bu, &action.phi_monomial(m));
            phi.record(p_lhs == p_rhs, || {
                witness(tuple(), render_uea(env, &p_lhs), render_uea(env, &p_rhs))
            });
        }
    }
    CheckReport {
        checks: vec![coalg, unit, phi],
    }
}

/// `ω` has full rank on each filtration piece: the images of monomials of
/// degree ≤ `filtration` are linearly independent.
pub fn omega_bijective(env: &Envelope, filtration: usize) -> CheckResult {
    let basis = SymBasis::new(env.dim(), filtration);
    let words = env.pbw_basis(filtration);
    let index: std::collections::BTreeMap<&PbwWord, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rows: Vec<Vec<Scalar>> = basis
        .monomials()
        .iter()
        .map(|m| {
            let mut row = vec![int(0); words.len()];
            for (w, c) in &env.omega_monomial(m) {
                row[index[w]] = c.clone();
            }
            row
        })
        .collect();
    let rank = crate::foundation::linalg::span_rank(&rows, words.len());
    let mut res = CheckResult::new("omega_bijective");
    res.record(rank == words.len() && rank == basis.len(), || {
        witness(
            vec![format!("filtration {filtration}")],
            format!("rank {rank}"),
            format!("dimension {}", words.len()),
        )
    });
    res
}

/// All of the above for `g = h/z`.
pub fn verify_envelope(action: &SymAction, degree: usize, filtration: usize) -> CheckReport {
    let env = action.envelope();
    let mut report = CheckReport::default();
    report.push(coproduct_multiplicative(env, filtration));
    report.extend(antipode_laws(env, filtration));
    report.push(omega_coalgebra(env, filtration));
    report.push(omega_module(env, filtration));
    report.push(omega_bijective(env, filtration));
    report.push(eulerian_projection(env, filtration));
    report.extend(action_laws(action, degree, filtration));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leibniz::{catalog, left_center, squares_ideal};

    #[test]
    fn heisenberg_and_sl2_pass() {
        for name in ["heisenberg", "sl2", "sq2", "leib3"] {
            let h = catalog(name).unwrap();
            let z = if h.is_lie() {
                squares_ideal(&h)
            } else {
                left_center(&h)
            };
            let action = SymAction::new(&h, &z).unwrap();
            let report = verify_envelope(&action, 2, 3);
            assert!(report.passed(), "{name}: {:?}", report.failing().next());
        }
    }

    #[test]
    fn heisenberg_symmetrization_example() {
        let h = catalog("heisenberg").unwrap();
        let action = SymAction::new(&h, &squares_ideal(&h)).unwrap();
        let env = action.envelope();
        let x = SymMonomial::new(vec![0, 1]);
        let half = crate::foundation::frac(1, 2);
        let expected = Uea::basis(PbwWord::raw(vec![0, 1]))
            .minus(&Uea::basis(PbwWord::generator(2)).scaled_by(&half));
        assert_eq!(env.omega_monomial(&x), expected);
    }
}
