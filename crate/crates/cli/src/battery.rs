//! The check batteries behind each command.

use std::sync::Arc;

use leibrack::check::{witness, CheckReport, CheckResult};
use leibrack::defcohom::{
    cohomology, first_order_axioms, first_order_from_uar, mu_n_properties, verify_relations,
    verify_relations_sampled, DeformationComplex,
};
use leibrack::envelope::{verify_envelope, SymAction};
use leibrack::formats::{algebra_to_value, poly_to_value};
use leibrack::foundation::{format_scalar, HPoly, Scalar, Vector};
use leibrack::leibniz::{
    left_center, quotient_lie, render_vector, squares_ideal, IdealChoice, LeibnizAlgebra, Subspace,
};
use leibrack::lodpir::LodayPirashvili;
use leibrack::rack::{
    from_augmented_rack, from_finite_rack, uar, verify_rack_axioms, yang_baxter_check, FiniteGroup,
    FiniteRack, RackBialgebra,
};
use leibrack::starprod::{
    exp_compat_check, poisson, psi_intertwining, scaling_lemma, star_h, PolyFun,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Report;
use crate::RunConfig;

/// Polynomial pairs sampled for the first-order star-product check.
pub const POISSON_SAMPLES: usize = 100;

fn subspace_json(s: &Subspace) -> Value {
    Value::Array(
        s.basis()
            .iter()
            .map(|v| Value::Array(v.iter().map(|c| Value::String(format_scalar(c))).collect()))
            .collect(),
    )
}

fn ideal_name(choice: &IdealChoice) -> &'static str {
    match choice {
        IdealChoice::Squares => "squares",
        IdealChoice::LeftCenter => "left-center",
        IdealChoice::Custom(_) => "custom",
    }
}

/// Exhaustive Leibniz identity; returns whether it held.
pub fn validate(report: &mut Report, subject: &str, h: &LeibnizAlgebra) -> bool {
    let n = h.dim();
    report.run_one("validate", subject, || {
        let violations = h.leibniz_violations();
        let mut res = CheckResult::new("leibniz_identity");
        res.instances = n * n * n - violations.len();
        for v in &violations {
            let (i, j, k) = v.triple;
            res.record(false, || {
                witness(
                    vec![i.to_string(), j.to_string(), k.to_string()],
                    render_vector(&v.lhs),
                    render_vector(&v.rhs),
                )
            });
        }
        res
    });
    report.put(subject, "dim", json!(n));
    report.put(subject, "is_lie", json!(h.is_lie()));
    report.entries.last().is_some_and(|e| e.result.passed())
}

/// `Q(h) ⊆ z ⊆ z(h)` and the Lie quotient.
pub fn ideals(report: &mut Report, subject: &str, h: &LeibnizAlgebra, choice: &IdealChoice) {
    let q = squares_ideal(h);
    let zc = left_center(h);
    let z = choice.resolve(h);
    let label = |s: &Subspace| format!("dim {}", s.dim());
    report.run_one("ideals", subject, || {
        let mut res = CheckResult::new("squares_in_left_center");
        res.record(zc.contains(&q), || {
            witness(vec!["Q(h)".into()], label(&q), label(&zc))
        });
        res
    });
    report.run_one("ideals", subject, || {
        let mut res = CheckResult::new("ideal_between_squares_and_left_center");
        res.record(z.contains(&q) && zc.contains(&z), || {
            witness(vec![ideal_name(choice).into()], label(&z), label(&zc))
        });
        res
    });
    let quotient = quotient_lie(h, &z);
    report.run_one("ideals", subject, || {
        let mut res = CheckResult::new("quotient_is_lie");
        let err = quotient.as_ref().err().map(|e| e.to_string());
        res.record(err.is_none(), || {
            witness(
                vec![ideal_name(choice).into()],
                err.clone().unwrap_or_default(),
                "Lie algebra".into(),
            )
        });
        res
    });
    report.put(subject, "squares_ideal", subspace_json(&q));
    report.put(subject, "left_center", subspace_json(&zc));
    report.put(
        subject,
        "ideal",
        json!({"choice": ideal_name(choice), "basis": subspace_json(&z)}),
    );
    if let Ok(qt) = quotient {
        report.put(subject, "quotient", algebra_to_value(qt.lie.as_leibniz()));
    }
}

fn yd_for_finite(x: &FiniteRack) -> Result<CheckResult, String> {
    let (group, p) = x.inner_group();
    let act = (0..group.order())
        .map(|h| {
            group
                .permutation(h)
                .map(<[usize]>::to_vec)
                .ok_or("inner group lacks permutations")
        })
        .collect::<Result<Vec<_>, _>>()?;
    let group: Arc<FiniteGroup> = Arc::new(group);
    let aug = from_augmented_rack(x, group, p, act).map_err(|e| e.to_string())?;
    aug.yd_check().map_err(|e| e.to_string())
}

fn rack_laws(report: &mut Report, subject: &str, r: &RackBialgebra) {
    report.run("rack-check", subject, || verify_rack_axioms(r));
    report.run_one("rack-check", subject, || yang_baxter_check(r));
}

/// Rack-bialgebra axioms, Yang–Baxter and Yetter–Drinfeld for `UAR_(k)(h)`.
pub fn rack_check_algebra(
    report: &mut Report,
    subject: &str,
    h: &LeibnizAlgebra,
    choice: &IdealChoice,
    cfg: &RunConfig,
) {
    let k = cfg.degree_cap;
    let u = match uar(h, k, choice) {
        Ok(u) => u,
        Err(e) => return report.error("rack-check", subject, "uar", e.to_string()),
    };
    report.put(subject, "uar_dimension", json!(u.basis().len()));
    rack_laws(report, subject, u.rack());
    let aug = u.augmented(cfg.filtration_cap);
    report.run("rack-check", subject, || aug.verify_structure());
    match aug.yd_check() {
        Ok(res) => report.run_one("rack-check", subject, || res),
        Err(e) => report.error("rack-check", subject, "yetter_drinfeld", e.to_string()),
    }
    report.run_one("rack-check", subject, || {
        let induced = u.induced_table();
        let d = u.basis().len();
        let mut res = CheckResult::new("phi_induces_product");
        for a in 0..d {
            for b in 0..d {
                let (lhs, rhs) = (u.rack().product_basis(a, b), induced.product_basis(a, b));
                res.record(lhs == rhs, || {
                    witness(
                        vec![u.rack().label(a), u.rack().label(b)],
                        u.rack().render(lhs),
                        u.rack().render(rhs),
                    )
                });
            }
        }
        res
    });
    match (
        uar(h, k, &IdealChoice::Squares),
        uar(h, k, &IdealChoice::LeftCenter),
    ) {
        (Ok(a), Ok(b)) => report.run_one("rack-check", subject, || {
            let d = a.basis().len();
            let mut res = CheckResult::new("independent_of_ideal");
            for x in 0..d {
                for y in 0..d {
                    let (l, r) = (a.rack().product_basis(x, y), b.rack().product_basis(x, y));
                    res.record(l == r, || {
                        witness(
                            vec![a.rack().label(x), a.rack().label(y)],
                            a.rack().render(l),
                            b.rack().render(r),
                        )
                    });
                }
            }
            res
        }),
        (Err(e), _) | (_, Err(e)) => {
            report.error("rack-check", subject, "independent_of_ideal", e.to_string())
        }
    }
}

/// The same laws for `K[X]`, with Yetter–Drinfeld over `K[Inn(X)]`.
pub fn rack_check_finite(report: &mut Report, subject: &str, x: &FiniteRack) {
    let kx = from_finite_rack(x);
    report.put(subject, "rack_size", json!(x.size()));
    rack_laws(report, subject, &kx);
    match yd_for_finite(x) {
        Ok(res) => report.run_one("rack-check", subject, || res),
        Err(e) => report.error("rack-check", subject, "yetter_drinfeld", e),
    }
}

/// Checks of `U(g)`, `ω` and the action of `U(g)` on `S(h)`.
pub fn envelope(
    report: &mut Report,
    subject: &str,
    h: &LeibnizAlgebra,
    choice: &IdealChoice,
    cfg: &RunConfig,
) {
    match SymAction::new(h, &choice.resolve(h)) {
        Ok(action) => report.run("envelope", subject, || {
            verify_envelope(&action, cfg.degree_cap, cfg.filtration_cap)
        }),
        Err(e) => report.error("envelope", subject, "sym_action", e.to_string()),
    }
}

fn hbar_constant(f: &PolyFun<HPoly>) -> Option<PolyFun<Scalar>> {
    let f0 = f.hbar_coefficient(0);
    (f0.lift() == *f).then_some(f0)
}

fn first_order_check(
    h: &LeibnizAlgebra,
    pairs: &[(PolyFun, PolyFun)],
    order: usize,
) -> CheckResult {
    let mut res = CheckResult::new("hbar1_is_minus_poisson");
    for (f, g) in pairs {
        let prod = star_h(h, &f.lift(), &g.lift(), order.max(1)).expect("dimensions match");
        let lhs = prod.hbar_coefficient(1);
        let rhs = poisson(h, f, g).expect("dimensions match").neg();
        res.record(lhs == rhs, || {
            witness(vec![f.render(), g.render()], lhs.render(), rhs.render())
        });
    }
    res
}

fn hbar0_check(
    h: &LeibnizAlgebra,
    f: &PolyFun<HPoly>,
    g: &PolyFun<HPoly>,
    result: &PolyFun<HPoly>,
) -> CheckResult {
    let mut res = CheckResult::new("hbar0_is_constant_term_times_g");
    let f0 = f.hbar_coefficient(0).coefficient(&vec![0; h.dim()]);
    let lhs = result.hbar_coefficient(0);
    let rhs = g.hbar_coefficient(0).scaled_by(&f0);
    res.record(lhs == rhs, || {
        witness(vec![f.render(), g.render()], lhs.render(), rhs.render())
    });
    res
}

/// `f▷_ħ g` for the given pair, or for every pair of coordinates, together
/// with the first-order, scaling and exponential checks.
pub fn star(
    report: &mut Report,
    subject: &str,
    h: &LeibnizAlgebra,
    pair: Option<(&PolyFun<HPoly>, &PolyFun<HPoly>)>,
    cfg: &RunConfig,
) {
    let n = h.dim();
    let order = cfg.hbar_order;
    match pair {
        Some((f, g)) => match star_h(h, f, g, order) {
            Ok(result) => {
                report.put(subject, "result", poly_to_value(&result));
                report.run_one("star", subject, || hbar0_check(h, f, g, &result));
                match (hbar_constant(f), hbar_constant(g)) {
                    (Some(f0), Some(g0)) => {
                        report.run_one("star", subject, || first_order_check(h, &[(f0, g0)], order))
                    }
                    _ => report.put(
                        subject,
                        "note",
                        json!("first-order check skipped: ħ-dependent input"),
                    ),
                }
            }
            Err(e) => report.error("star", subject, "star_product", e.to_string()),
        },
        None => {
            let mut results = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let (f, g) = (PolyFun::var(n, i).lift(), PolyFun::var(n, j).lift());
                    let r = star_h(h, &f, &g, order).expect("dimensions match");
                    results.push(
                        json!({"f": f.render(), "g": g.render(), "result": poly_to_value(&r)}),
                    );
                }
            }
            report.put(subject, "coordinate_products", Value::Array(results));
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let pairs: Vec<(PolyFun, PolyFun)> = (0..POISSON_SAMPLES)
                .map(|_| {
                    (
                        PolyFun::random(&mut rng, n, 3, 3),
                        PolyFun::random(&mut rng, n, 3, 3),
                    )
                })
                .collect();
            report.run_one("star", subject, || first_order_check(h, &pairs, order));
        }
    }
    report.run_one("star", subject, || psi_intertwining(h, cfg.degree_cap));
    match uar(h, cfg.degree_cap.min(3), &IdealChoice::Squares) {
        Ok(u) => report.run_one("star", subject, || scaling_lemma(&u)),
        Err(e) => report.error("star", subject, "scaling_lemma", e.to_string()),
    }
    report.run_one("star", subject, || {
        let mut res = CheckResult::new("exp_compat");
        for i in 0..n {
            for j in 0..n {
                let c = exp_compat_check(h, &Vector::basis(i), &Vector::basis(j), order, order);
                let ok = c.check.passed();
                res.record(ok, || {
                    let w = c.check.first().expect("failure witness").clone();
                    witness(
                        vec![
                            h.names()[i].clone(),
                            h.names()[j].clone(),
                            w.tuple.join(","),
                        ],
                        w.lhs,
                        w.rhs,
                    )
                });
            }
        }
        res
    });
}

/// Basis cochains beyond which degree-2 relations are checked on random
/// combinations.
pub const RELATION_SAMPLES: usize = 2;

fn complex_checks(
    report: &mut Report,
    subject: &str,
    cx: &DeformationComplex,
    degrees: &[usize],
    sampled: Option<u64>,
) {
    let mut dims = Vec::new();
    for &n in degrees {
        let mut failure = None;
        report.run(&format!("cohomology/C{n}"), subject, || {
            let rel = match sampled {
                Some(seed) if n >= 2 => verify_relations_sampled(cx, n, RELATION_SAMPLES, seed),
                _ => verify_relations(cx, n),
            };
            rel.unwrap_or_else(|e| {
                failure = Some(e.to_string());
                CheckReport::default()
            })
        });
        if let Some(e) = failure {
            report.error("cohomology", subject, &format!("relations_C{n}"), e);
        }
        report.run(&format!("cohomology/C{n}"), subject, || {
            mu_n_properties(cx, n + 1)
        });
        match cohomology(cx, n) {
            Ok(d) => dims.push(json!({
                "n": d.n,
                "cochains": d.cochains,
                "cocycles": d.cocycles,
                "coboundaries": d.coboundaries,
                "cohomology": d.cohomology,
            })),
            Err(e) => report.error("cohomology", subject, &format!("dims_C{n}"), e.to_string()),
        }
    }
    report.put(subject, "dims", Value::Array(dims));
}

/// Deformation complex of `UAR_(k)(h)` and of the trivial product on
/// `S(h)_(1)`, with the first-order deformation `μ₁ = π₁(·)▷(·)`.
pub fn cohomology_algebra(
    report: &mut Report,
    subject: &str,
    h: &LeibnizAlgebra,
    choice: &IdealChoice,
    cfg: &RunConfig,
) {
    let degrees = [1, 2];
    let mut caps = vec![1];
    if cfg.degree_cap > 1 {
        caps.push(cfg.degree_cap);
    }
    for k in caps {
        let sampled = (k > 1).then_some(cfg.seed);
        match uar(h, k, choice)
            .map_err(|e| e.to_string())
            .and_then(|u| DeformationComplex::new(u.rack().clone()).map_err(|e| e.to_string()))
        {
            Ok(cx) => complex_checks(report, &format!("{subject}/uar{k}"), &cx, &degrees, sampled),
            Err(e) => report.error("cohomology", subject, &format!("complex_uar{k}"), e),
        }
    }
    let u1 = match uar(h, 1, choice) {
        Ok(u) => u,
        Err(e) => return report.error("cohomology", subject, "trivial_complex", e.to_string()),
    };
    let (r0, mu1) = first_order_from_uar(&u1);
    match DeformationComplex::new(r0.clone()) {
        Ok(cx) => {
            let trivial = format!("{subject}/trivial");
            complex_checks(report, &trivial, &cx, &degrees, None);
            report.run_one("cohomology", &trivial, || {
                let mut res = cx.coderivation_check(&mu1);
                res.name = "mu1_coderivation".into();
                res
            });
            report.run_one("cohomology", &trivial, || {
                let d = cx.differential(&mu1);
                let mut res = CheckResult::new("mu1_cocycle");
                res.record(d.is_zero(), || {
                    witness(vec!["dμ₁".into()], "nonzero".into(), "0".into())
                });
                res
            });
            report.run("cohomology/first-order", &trivial, || {
                first_order_axioms(&r0, &mu1)
            });
        }
        Err(e) => report.error("cohomology", subject, "trivial_complex", e.to_string()),
    }
}

pub fn cohomology_finite(report: &mut Report, subject: &str, x: &FiniteRack) {
    match DeformationComplex::new(from_finite_rack(x)) {
        Ok(cx) => complex_checks(report, subject, &cx, &[1, 2], None),
        Err(e) => report.error("cohomology", subject, "complex", e.to_string()),
    }
}

/// `Γ`, `Ψ_LP` and the hemi-semidirect check on degree ≤ `k` monomials.
pub fn lp_check(
    report: &mut Report,
    subject: &str,
    h: &LeibnizAlgebra,
    choice: &IdealChoice,
    cfg: &RunConfig,
) {
    let action = match SymAction::new(h, &choice.resolve(h)) {
        Ok(a) => a,
        Err(e) => return report.error("lp-check", subject, "sym_action", e.to_string()),
    };
    let lp = LodayPirashvili::new(action, cfg.filtration_cap);
    match lp.verify(cfg.degree_cap, cfg.filtration_cap.min(2)) {
        Ok(r) => report.run("lp-check", subject, || r),
        Err(e) => report.error("lp-check", subject, "loday_pirashvili", e.to_string()),
    }
}

/// Every battery that applies to `h`.
pub fn algebra_battery(
    report: &mut Report,
    subject: &str,
    h: &LeibnizAlgebra,
    choice: &IdealChoice,
    cfg: &RunConfig,
) {
    if !validate(report, subject, h) {
        return;
    }
    ideals(report, subject, h, choice);
    envelope(report, subject, h, choice, cfg);
    rack_check_algebra(report, subject, h, choice, cfg);
    star(report, subject, h, None, cfg);
    cohomology_algebra(report, subject, h, choice, cfg);
    lp_check(report, subject, h, choice, cfg);
}

pub fn rack_battery(report: &mut Report, subject: &str, x: &FiniteRack) {
    rack_check_finite(report, subject, x);
    cohomology_finite(report, subject, x);
}
