//! Acceptance suite: one pass/fail line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use leibrack::check::CheckReport;
use leibrack::defcohom::{
    equivalent, first_order_axioms, first_order_from_uar, verify_relations, Cochain,
    DeformationComplex,
};
use leibrack::envelope::{verify_envelope, SymAction};
use leibrack::foundation::{frac, int, HPoly, Vector};
use leibrack::leibniz::{
    catalog, planted_invalid, squares_ideal, IdealChoice, LeibnizAlgebra, CATALOG_NAMES,
};
use leibrack::lodpir::LodayPirashvili;
use leibrack::rack::{from_finite_rack, uar, verify_rack_axioms, yang_baxter_check, FiniteRack};
use leibrack::starprod::{exp_compat_check, poisson, scaling_lemma, star_h, PolyFun};
use leibrack::symcoalg::SymMonomial;
use leibrack_cli::{run, Command, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(what: &str, r: &CheckReport) -> Result<(), String> {
    match r.failing().next() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} failed at {:?}", c.name, c.first())),
    }
}

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    ensure(t <= limit, || format!("took {t:?}, limit {limit:?}"))
}

fn catalog_up_to(dim: usize) -> Vec<(&'static str, LeibnizAlgebra)> {
    CATALOG_NAMES
        .iter()
        .map(|n| (*n, catalog(n).expect("catalog entry")))
        .filter(|(_, h)| h.dim() <= dim)
        .collect()
}

fn leibniz_validation() -> Outcome {
    let start = Instant::now();
    for name in CATALOG_NAMES {
        let h = catalog(name).map_err(|e| e.to_string())?;
        let v = h.leibniz_violations();
        ensure(v.is_empty(), || {
            format!("{name} violates the identity at {:?}", v[0].triple)
        })?;
    }
    let (dim, consts) = planted_invalid();
    let bad = LeibnizAlgebra::unchecked(dim, None, &consts).map_err(|e| e.to_string())?;
    let v = bad.leibniz_violations();
    ensure(!v.is_empty(), || "planted example passes".into())?;
    ensure(v[0].triple == (1, 2, 2), || {
        format!("first failing triple {:?}", v[0].triple)
    })?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "{} algebras; planted example fails at (1,2,2)",
        CATALOG_NAMES.len()
    ))
}

fn uar_construction() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (name, h) in catalog_up_to(4) {
        for k in 1..=3 {
            let a = uar(&h, k, &IdealChoice::Squares).map_err(|e| format!("{name}: {e}"))?;
            let b = uar(&h, k, &IdealChoice::LeftCenter).map_err(|e| format!("{name}: {e}"))?;
            report_ok(&format!("{name} k={k}"), &verify_rack_axioms(a.rack()))?;
            let d = a.basis().len();
            for x in 0..d {
                for y in 0..d {
                    ensure(
                        a.rack().product_basis(x, y) == b.rack().product_basis(x, y),
                        || format!("{name} k={k}: tables differ at ({x},{y})"),
                    )?;
                }
            }
            count += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{count} truncations"))
}

fn symmetrization() -> Outcome {
    for name in ["heisenberg", "sl2"] {
        let h = catalog(name).map_err(|e| e.to_string())?;
        let action = SymAction::new(&h, &squares_ideal(&h)).map_err(|e| e.to_string())?;
        let r = verify_envelope(&action, 2, 3);
        report_ok(name, &r)?;
        let env = action.envelope();
        for i in 0..env.dim() {
            for j in 0..env.dim() {
                let (a, b) = (env.generator(i), env.generator(j));
                let expected = env
                    .mul(&a, &b)
                    .plus(&env.mul(&b, &a))
                    .scaled_by(&frac(1, 2));
                let got = env.omega_monomial(&SymMonomial::new(vec![i, j]));
                ensure(got == expected, || {
                    format!("{name}: ω(ξ{}•ξ{}) wrong", i + 1, j + 1)
                })?;
            }
        }
    }
    Ok("heisenberg, sl2 to filtration 3".into())
}

fn star_product() -> Outcome {
    let sq2 = catalog("sq2").map_err(|e| e.to_string())?;
    let a1 = PolyFun::var(2, 0).lift();
    let got = star_h(&sq2, &a1, &a1, 4).map_err(|e| e.to_string())?;
    let expected = PolyFun::var(2, 1)
        .lift()
        .scaled(&HPoly::monomial(int(1), 1));
    ensure(got == expected, || format!("α₁▷α₁ = {}", got.render()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pairs = 0;
    for name in CATALOG_NAMES {
        let h = catalog(name).map_err(|e| e.to_string())?;
        let n = h.dim();
        for _ in 0..100 {
            let f = PolyFun::random(&mut rng, n, 3, 3);
            let g = PolyFun::random(&mut rng, n, 3, 3);
            let lhs = star_h(&h, &f.lift(), &g.lift(), 4)
                .map_err(|e| e.to_string())?
                .hbar_coefficient(1);
            let rhs = poisson(&h, &f, &g).map_err(|e| e.to_string())?.neg();
            ensure(lhs == rhs, || {
                format!("{name}: ħ¹ of {} ▷ {}", f.render(), g.render())
            })?;
            pairs += 1;
        }
        let u = uar(&h, 3, &IdealChoice::Squares).map_err(|e| e.to_string())?;
        let s = scaling_lemma(&u);
        ensure(s.passed(), || {
            format!("{name}: scaling lemma {:?}", s.first())
        })?;
    }
    Ok(format!("{pairs} random pairs"))
}

fn exponential_compatibility() -> Outcome {
    let mut count = 0;
    for name in ["sq2", "heisenberg"] {
        let h = catalog(name).map_err(|e| e.to_string())?;
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let c = exp_compat_check(&h, &Vector::basis(i), &Vector::basis(j), 4, 4);
                ensure(c.check.passed(), || {
                    format!("{name} ({i},{j}): {:?}", c.check.first())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} basis pairs, M = D = 4"))
}

fn deformation_complex() -> Outcome {
    let start = Instant::now();
    let mut complexes = Vec::new();
    for (name, h) in catalog_up_to(3) {
        let u = uar(&h, 1, &IdealChoice::Squares).map_err(|e| e.to_string())?;
        let (r0, _) = first_order_from_uar(&u);
        complexes.push((format!("{name} trivial"), r0));
    }
    for name in ["sq2", "heisenberg"] {
        let h = catalog(name).map_err(|e| e.to_string())?;
        let u = uar(&h, 1, &IdealChoice::Squares).map_err(|e| e.to_string())?;
        complexes.push((format!("{name} UAR_(1)"), u.rack().clone()));
    }
    for (label, r) in &complexes {
        let cx = DeformationComplex::new(r.clone()).map_err(|e| e.to_string())?;
        for n in [1, 2] {
            let rel = verify_relations(&cx, n).map_err(|e| format!("{label}: {e}"))?;
            report_ok(&format!("{label} degree {n}"), &rel)?;
        }
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} complexes, degrees 1 and 2", complexes.len()))
}

fn random_cochain(rng: &mut ChaCha8Rng, basis: &[Cochain], dim: usize) -> Cochain {
    let mut acc = Cochain::zero(dim, 1);
    for w in basis {
        acc = acc.plus(&w.scaled(&int(rng.gen_range(-5..=5))));
    }
    acc
}

fn round_trips(cx: &DeformationComplex, mu1: &Cochain, seed: u64) -> Result<usize, String> {
    let c1 = cx.coderivation_space(1).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nontrivial = 0;
    for s in 0..20 {
        let alpha = random_cochain(&mut rng, &c1, cx.dim());
        let d_alpha = cx.differential(&alpha);
        if !d_alpha.is_zero() {
            nontrivial += 1;
        }
        let mu1p = mu1.plus(&d_alpha);
        let eq = equivalent(cx, mu1, &mu1p).map_err(|e| e.to_string())?;
        let w = eq
            .witness
            .ok_or_else(|| format!("sample {s}: no witness"))?;
        ensure(eq.equivalent && eq.consistent, || {
            format!("sample {s}: not recognised")
        })?;
        ensure(cx.differential(&w) == mu1.minus(&mu1p), || {
            format!("sample {s}: dα mismatch")
        })?;
    }
    Ok(nontrivial)
}

fn infinitesimal_deformation() -> Outcome {
    let sq2 = catalog("sq2").map_err(|e| e.to_string())?;
    let u1 = uar(&sq2, 1, &IdealChoice::Squares).map_err(|e| e.to_string())?;
    let (r0, mu1) = first_order_from_uar(&u1);
    let cx = DeformationComplex::new(r0.clone()).map_err(|e| e.to_string())?;
    ensure(cx.coderivation_check(&mu1).passed(), || {
        "μ₁ is not a coderivation".into()
    })?;
    ensure(cx.differential(&mu1).is_zero(), || {
        "μ₁ is not a cocycle".into()
    })?;
    report_ok("first order", &first_order_axioms(&r0, &mu1))?;
    let trivial = round_trips(&cx, &mu1, 0)?;
    // B² vanishes for the trivial product, so the round trip is repeated on
    // UAR_(1)(sq2) starting from the zero deformation.
    let ucx = DeformationComplex::new(u1.rack().clone()).map_err(|e| e.to_string())?;
    let nontrivial = round_trips(&ucx, &Cochain::zero(ucx.dim(), 2), 1)?;
    ensure(nontrivial > 0, || {
        "every sampled coboundary vanished".into()
    })?;
    Ok(format!(
        "20 + 20 round trips ({trivial} and {nontrivial} with dα ≠ 0)"
    ))
}

fn yang_baxter() -> Outcome {
    for n in [3, 5] {
        let r = yang_baxter_check(&from_finite_rack(&FiniteRack::dihedral_with_unit(n)));
        ensure(r.passed(), || format!("K[R{n}]: {:?}", r.first()))?;
    }
    let sq2 = catalog("sq2").map_err(|e| e.to_string())?;
    let u = uar(&sq2, 1, &IdealChoice::Squares).map_err(|e| e.to_string())?;
    let r = yang_baxter_check(u.rack());
    ensure(r.passed(), || format!("UAR_(1)(sq2): {:?}", r.first()))?;
    Ok("K[R3], K[R5], UAR_(1)(sq2)".into())
}

fn loday_pirashvili() -> Outcome {
    for name in ["sq2", "heisenberg"] {
        let h = catalog(name).map_err(|e| e.to_string())?;
        let action = SymAction::new(&h, &squares_ideal(&h)).map_err(|e| e.to_string())?;
        let lp = LodayPirashvili::new(action, 3);
        let f = lp.f_identity_check(3);
        ensure(f.passed(), || format!("{name}: {:?}", f.first()))?;
        let r = lp.verify(2, 2).map_err(|e| e.to_string())?;
        report_ok(name, &r)?;
        ensure(
            r.get("gamma_morphism").is_some_and(|c| c.instances > 0),
            || format!("{name}: Γ unchecked"),
        )?;
    }
    Ok("sq2, heisenberg".into())
}

fn cli_determinism() -> Outcome {
    let cfg = RunConfig::new(Command::Report);
    let first = run(&cfg).map_err(|e| e.to_string())?;
    let second = run(&cfg).map_err(|e| e.to_string())?;
    ensure(first.render() == second.render(), || {
        "reports differ".into()
    })?;
    ensure(first.exit_code == 0, || "full battery has failures".into())?;
    Ok(format!("{} bytes", first.render().len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("leibniz validation", leibniz_validation),
        ("UAR construction and ideal independence", uar_construction),
        ("symmetrization", symmetrization),
        ("star product", star_product),
        ("exponential compatibility", exponential_compatibility),
        ("deformation complex relations", deformation_complex),
        ("infinitesimal deformations", infinitesimal_deformation),
        ("Yang-Baxter equation", yang_baxter),
        ("Loday-Pirashvili morphism", loday_pirashvili),
        ("CLI determinism", cli_determinism),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
