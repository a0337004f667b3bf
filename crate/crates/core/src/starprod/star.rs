use std::sync::Arc;

use crate::check::{map_indices, witness, CheckResult};
use crate::envelope::pbw::next_permutation;
use crate::foundation::{factorial, int, Coeff, HPoly, Scalar, Vector};
use crate::leibniz::LeibnizAlgebra;
use crate::rack::{RackBialgebra, Uar};
use crate::symcoalg::SymElt;

use super::poly::{psi_monomial, Exponents, PolyFun};
use super::StarError;

fn check_vars<C: Coeff>(h: &LeibnizAlgebra, f: &PolyFun<C>) -> Result<(), StarError> {
    if f.nvars() != h.dim() {
        return Err(StarError::DimensionMismatch {
            expected: h.dim(),
            found: f.nvars(),
        });
    }
    Ok(())
}

fn adtilde_unchecked<C: Coeff>(h: &LeibnizAlgebra, i: usize, f: &PolyFun<C>) -> PolyFun<C> {
    let n = h.dim();
    let mut out = PolyFun::zero(n);
    for j in 0..n {
        let coeffs = h.basis_bracket(i, j);
        if coeffs.is_zero() {
            continue;
        }
        let df = f.derivative(j);
        if df.is_zero() {
            continue;
        }
        let lin: PolyFun<C> = PolyFun::linear(n, &coeffs.map_coeffs(|c| C::from_scalar(c.clone())));
        out = out.plus(&lin.mul(&df));
    }
    out
}

/// `(ad̃_i f)(α) = Σ_{j,k} α_k c^k_{ij} ∂f/∂α_j` (0-based `i`).
pub fn adtilde<C: Coeff>(
    h: &LeibnizAlgebra,
    i: usize,
    f: &PolyFun<C>,
) -> Result<PolyFun<C>, StarError> {
    if i >= h.dim() {
        return Err(StarError::IndexOutOfRange {
            index: i + 1,
            dim: h.dim(),
        });
    }
    check_vars(h, f)?;
    Ok(adtilde_unchecked(h, i, f))
}

/// `ad̃_{i_1}∘⋯∘ad̃_{i_r}(g)`.
fn adtilde_seq<C: Coeff>(h: &LeibnizAlgebra, seq: &[usize], g: &PolyFun<C>) -> PolyFun<C> {
    let mut acc = g.clone();
    for &i in seq.iter().rev() {
        if acc.is_zero() {
            break;
        }
        acc = adtilde_unchecked(h, i, &acc);
    }
    acc
}

fn letters(beta: &[u32]) -> Vec<usize> {
    beta.iter()
        .enumerate()
        .flat_map(|(i, &d)| std::iter::repeat_n(i, d as usize))
        .collect()
}

/// `Σ_{σ} ad̃_{σ}(g)` over the distinct orderings of the multiset `β`,
/// weighted so that the sum equals `(1/r!) Σ_{i_1..i_r} ∂^r α^β(0) ad̃(g)`.
fn symmetrized_adtilde<C: Coeff>(h: &LeibnizAlgebra, beta: &[u32], g: &PolyFun<C>) -> PolyFun<C> {
    let mut seq = letters(beta);
    let r = seq.len();
    let weight: Scalar = beta
        .iter()
        .map(|&b| factorial(b as usize))
        .product::<Scalar>()
        / factorial(r);
    let mut out = PolyFun::zero(g.nvars());
    loop {
        out = out.plus(&adtilde_seq(h, &seq, g));
        if !next_permutation(&mut seq) {
            break;
        }
    }
    out.scaled_by(&weight)
}

/// `f▷_ħ g` with ħ-coefficients reduced modulo `ħ^{M+1}`.
pub fn star_h(
    h: &LeibnizAlgebra,
    f: &PolyFun<HPoly>,
    g: &PolyFun<HPoly>,
    order: usize,
) -> Result<PolyFun<HPoly>, StarError> {
    check_vars(h, f)?;
    check_vars(h, g)?;
    let terms: Vec<(&Exponents, &HPoly)> = f
        .terms()
        .iter()
        .filter(|(e, _)| e.iter().map(|&d| d as usize).sum::<usize>() <= order)
        .collect();
    let parts = map_indices(terms.len(), |t| {
        let (beta, c) = terms[t];
        let r: usize = beta.iter().map(|&d| d as usize).sum();
        let scale = HPoly::monomial(int(1), r)
            .mul_ref(c)
            .with_truncation(Some(order));
        symmetrized_adtilde(h, beta, g).scaled(&scale)
    });
    let mut out = PolyFun::zero(h.dim());
    for p in parts {
        out = out.plus(&p);
    }
    Ok(out.truncate_hbar(order))
}

/// `f▷_ħ g` for rational polynomials.
pub fn star(
    h: &LeibnizAlgebra,
    f: &PolyFun,
    g: &PolyFun,
    order: usize,
) -> Result<PolyFun<HPoly>, StarError> {
    star_h(h, &f.lift(), &g.lift(), order)
}

/// `{f,g}(α) = −Σ c^k_{ij} ∂_i f(0) ∂_j g(α) α_k`.
pub fn poisson(h: &LeibnizAlgebra, f: &PolyFun, g: &PolyFun) -> Result<PolyFun, StarError> {
    check_vars(h, f)?;
    check_vars(h, g)?;
    let n = h.dim();
    let mut out = PolyFun::zero(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        let d = f.derivative_at_zero(&e);
        if d == int(0) {
            continue;
        }
        out = out.minus(&adtilde_unchecked(h, i, g).scaled_by(&d));
    }
    Ok(out)
}

/// `Σ_{m≤M} ħ^m/m! ad_x^m(y)`, with a flag telling whether the series
/// terminates within the computed orders.
#[derive(Clone, Debug, PartialEq)]
pub struct HSeriesVec {
    pub coeffs: Vec<Vector>,
    pub order: usize,
    pub exact: bool,
}

impl HSeriesVec {
    /// The series as an `h`-vector with ħ-polynomial coordinates.
    pub fn to_hvector(&self) -> Vector<HPoly> {
        let mut out: Vector<HPoly> = Vector::zero();
        for (m, v) in self.coeffs.iter().enumerate() {
            for (k, c) in v {
                out.add_term(
                    *k,
                    HPoly::monomial(c.clone(), m).with_truncation(Some(self.order)),
                );
            }
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| {
                let body = v
                    .iter()
                    .map(|(k, c)| {
                        format!("({})*{}", crate::foundation::format_scalar(c), names[*k])
                    })
                    .collect::<Vec<_>>()
                    .join(" + ");
                match m {
                    0 => body,
                    1 => format!("ħ·[{body}]"),
                    _ => format!("ħ^{m}·[{body}]"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `x▶_ħ y = e^{ħ ad_x}(y)` up to `ħ^M`.
pub fn formal_rack(h: &LeibnizAlgebra, x: &Vector, y: &Vector, order: usize) -> HSeriesVec {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = y.clone();
    for m in 0..=order {
        coeffs.push(power.scaled_by(&factorial(m).recip()));
        power = h.bracket(x, &power);
    }
    HSeriesVec {
        coeffs,
        order,
        exact: power.is_zero(),
    }
}

/// Outcome of the exponential compatibility comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpCompat {
    pub check: CheckResult,
    /// ħ-order up to which both sides are certified.
    pub valid_order: usize,
    pub degree_cap: usize,
    pub series_exact: bool,
}

fn compare_certified(
    name: &str,
    lhs: &PolyFun<HPoly>,
    rhs: &PolyFun<HPoly>,
    degree: usize,
    order: usize,
) -> CheckResult {
    let lhs = lhs.truncate(degree).truncate_hbar(order);
    let rhs = rhs.truncate(degree).truncate_hbar(order);
    let mut keys: Vec<Exponents> = lhs.terms().keys().cloned().collect();
    keys.extend(rhs.terms().keys().cloned());
    keys.sort();
    keys.dedup();
    let mut res = CheckResult::new(name);
    for e in keys {
        let (a, b) = (lhs.coefficient(&e), rhs.coefficient(&e));
        res.record(a == b, || {
            witness(vec![format!("{e:?}")], a.render(), b.render())
        });
    }
    if res.instances == 0 {
        res.record(true, || unreachable!());
    }
    res
}

/// `e^{x̂}▷_ħ e^{ŷ} = e^{(x▶_ħ y)^}` on Taylor truncations of degree `D`,
/// compared for total degree ≤ D and ħ-order ≤ min(M, D).
pub fn exp_compat_check(
    h: &LeibnizAlgebra,
    x: &Vector,
    y: &Vector,
    order: usize,
    degree: usize,
) -> ExpCompat {
    let n = h.dim();
    let ex = PolyFun::<Scalar>::exp_linear(n, x, degree);
    let ey = PolyFun::<Scalar>::exp_linear(n, y, degree);
    let lhs = star(h, &ex, &ey, order).expect("matching dimensions");
    let series = formal_rack(h, x, y, order);
    let rhs = PolyFun::<HPoly>::exp_linear(n, &series.to_hvector(), degree);
    let valid = order.min(degree);
    ExpCompat {
        check: compare_certified("exp_compat", &lhs, &rhs, degree, valid),
        valid_order: valid,
        degree_cap: degree,
        series_exact: series.exact,
    }
}

/// Self-distributivity of `▷_ħ` on `e^{x̂}, e^{ŷ}, e^{ẑ}`, certified range
/// as in [`exp_compat_check`].
pub fn exp_self_distributivity(
    h: &LeibnizAlgebra,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    order: usize,
    degree: usize,
) -> CheckResult {
    let n = h.dim();
    let e = |v: &Vector| PolyFun::<Scalar>::exp_linear(n, v, degree).lift();
    let (ex, ey, ez) = (e(x), e(y), e(z));
    let st = |f: &PolyFun<HPoly>, g: &PolyFun<HPoly>| {
        star_h(h, f, g, order)
            .expect("matching dimensions")
            .truncate(degree)
    };
    let lhs = st(&ex, &st(&ey, &ez));
    let rhs = st(&st(&ex, &ey), &st(&ex, &ez));
    compare_certified(
        "exp_self_distributivity",
        &lhs,
        &rhs,
        degree,
        order.min(degree),
    )
}

/// `Ψ(ad^s_{e_i}(a)) = ad̃_i(Ψ(a))` on all monomials of degree ≤ `degree`.
pub fn psi_intertwining(h: &LeibnizAlgebra, degree: usize) -> CheckResult {
    let n = h.dim();
    let ad = crate::rack::AdSym::new(h);
    let basis = crate::symcoalg::SymBasis::new(n, degree);
    let mut res = CheckResult::new("psi_intertwining");
    for m in basis.monomials() {
        for i in 0..n {
            let lhs_sym = ad.monomial(i, m);
            let lhs = super::poly::psi(&SymElt::from_combination(n, None, lhs_sym));
            let rhs = adtilde_unchecked(h, i, &psi_monomial(m, n));
            res.record(lhs == rhs, || {
                witness(
                    vec![h.names()[i].clone(), m.render(Some(h.names()))],
                    lhs.render(),
                    rhs.render(),
                )
            });
        }
    }
    res
}

/// `Ψ(a)▷_ħΨ(b) = ħ^r Ψ(a▷b)` for monomials `a` of degree `r` and `b`
/// in the truncation of `u`.
pub fn scaling_lemma(u: &Uar) -> CheckResult {
    let h = u.h();
    let n = h.dim();
    let basis = u.basis();
    let m = basis.len();
    let order = basis.cap();
    let outcomes = map_indices(m * m, |t| {
        let (a, b) = (basis.monomial(t / m), basis.monomial(t % m));
        let lhs = star(h, &psi_monomial(a, n), &psi_monomial(b, n), order).expect("dims");
        let prod = u.to_sym(u.rack().product_basis(t / m, t % m));
        let prod = super::poly::psi(&SymElt::from_combination(n, None, prod));
        let rhs = prod.lift().scaled(&HPoly::monomial(int(1), a.degree()));
        (lhs != rhs).then(|| {
            witness(
                vec![a.render(Some(h.names())), b.render(Some(h.names()))],
                lhs.render(),
                rhs.render(),
            )
        })
    });
    CheckResult::from_outcomes("scaling_lemma", outcomes)
}

/// `μ_ħ(a⊗b) = Σ_r ħ^r π_r(a)▷b` as a rack bialgebra over `K[ħ]`.
pub fn deformed_rack(u: &Uar, order: Option<usize>) -> RackBialgebra<HPoly> {
    let basis = u.basis();
    let rack = u.rack();
    RackBialgebra::from_fn(Arc::clone(u.coalgebra()), |a, b| {
        let r = basis.monomial(a).degree();
        let hr = HPoly::monomial(int(1), r).with_truncation(order);
        rack.product_basis(a, b).map_coeffs(|c| hr.scale(c))
    })
}

/// `μ_ħ(a⊗b)` on elements of the truncation of `u`.
pub fn star_on_sym(u: &Uar, a: &SymElt, b: &SymElt) -> Result<SymElt<HPoly>, StarError> {
    let basis = u.basis();
    let to_vec = |x: &SymElt| -> Result<Vector, StarError> {
        if x.dim() != basis.dim() {
            return Err(StarError::DimensionMismatch {
                expected: basis.dim(),
                found: x.dim(),
            });
        }
        let mut v = Vector::zero();
        for (m, c) in x.terms() {
            let i = basis.index_of(m).ok_or(StarError::DegreeCap(m.degree()))?;
            v.add_term(i, c.clone());
        }
        Ok(v)
    };
    let (va, vb) = (to_vec(a)?, to_vec(b)?);
    let d = deformed_rack(u, None);
    let lift = |v: &Vector| v.map_coeffs(|c| HPoly::constant(c.clone()));
    let prod = d.product(&lift(&va), &lift(&vb));
    let terms = prod
        .iter()
        .map(|(i, c)| (basis.monomial(*i).clone(), c.clone()))
        .collect();
    Ok(SymElt::from_combination(
        basis.dim(),
        Some(basis.cap()),
        terms,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leibniz::{catalog, IdealChoice};
    use crate::rack::uar;
    use crate::symcoalg::SymMonomial;

    fn sq2() -> LeibnizAlgebra {
        catalog("sq2").unwrap()
    }

    #[test]
    fn adtilde_on_sq2() {
        let h = sq2();
        let a1 = PolyFun::<Scalar>::var(2, 0);
        assert_eq!(adtilde(&h, 0, &a1).unwrap(), PolyFun::var(2, 1));
        assert!(adtilde(&h, 1, &a1.mul(&a1)).unwrap().is_zero());
        assert!(adtilde(&h, 0, &PolyFun::<Scalar>::one(2))
            .unwrap()
            .is_zero());
        assert!(matches!(
            adtilde(&h, 2, &a1),
            Err(StarError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn star_alpha1_alpha1() {
        let h = sq2();
        let a1 = PolyFun::<Scalar>::var(2, 0);
        let p = star(&h, &a1, &a1, 3).unwrap();
        assert_eq!(p, PolyFun::var(2, 1).lift().scaled(&HPoly::hbar()));
        assert_eq!(poisson(&h, &a1, &a1).unwrap(), PolyFun::var(2, 1).neg());
    }

    #[test]
    fn formal_rack_sq2() {
        let s = formal_rack(&sq2(), &Vector::basis(0), &Vector::basis(0), 3);
        assert!(s.exact);
        assert_eq!(s.coeffs[0], Vector::basis(0));
        assert_eq!(s.coeffs[1], Vector::basis(1));
        assert!(s.coeffs[2].is_zero());
    }

    #[test]
    fn exp_compat_sq2() {
        let r = exp_compat_check(&sq2(), &Vector::basis(0), &Vector::basis(0), 3, 3);
        assert!(r.check.passed(), "{:?}", r.check.first());
    }

    #[test]
    fn intertwining_and_scaling() {
        for name in ["sq2", "heisenberg", "leib3"] {
            let h = catalog(name).unwrap();
            assert!(psi_intertwining(&h, 3).passed());
            let u = uar(&h, 3, &IdealChoice::Squares).unwrap();
            assert!(scaling_lemma(&u).passed());
        }
    }

    #[test]
    fn deformed_product_sq2() {
        let u = uar(&sq2(), 2, &IdealChoice::Squares).unwrap();
        let e1 = SymElt::generator(2, Some(2), 0);
        let p = star_on_sym(&u, &e1, &e1).unwrap();
        assert_eq!(p.coefficient(&SymMonomial::generator(1)), HPoly::hbar());
        assert!(crate::rack::verify_rack_axioms(&deformed_rack(&u, None)).passed());
        let one = SymElt::one(2, Some(2));
        assert_eq!(
            star_on_sym(&u, &one, &e1)
                .unwrap()
                .coefficient(&SymMonomial::generator(0)),
            HPoly::constant(int(1))
        );
    }
}
