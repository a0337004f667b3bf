use crate::check::{map_indices, witness, CheckResult};
use crate::foundation::{Coeff, Combination};

use super::bialgebra::RackBialgebra;
use super::coalgebra::Tensor2;

pub type Tensor3<C> = Combination<(usize, usize, usize), C>;

/// `R̃(a⊗b) = Σ b1 ⊗ (b2▷a)`.
pub fn r_tilde<C: Coeff>(r: &RackBialgebra<C>, a: usize, b: usize) -> Tensor2<C> {
    let mut out = Tensor2::zero();
    for ((b1, b2), s) in r.coalgebra().delta(b) {
        let s = C::from_scalar(s.clone());
        for (k, c) in r.product_basis(*b2, a) {
            out.add_term((*b1, *k), s.mul_ref(c));
        }
    }
    out
}

fn on_first<C: Coeff>(r: &RackBialgebra<C>, t: &Tensor3<C>) -> Tensor3<C> {
    let mut out = Tensor3::zero();
    for ((a, b, c), s) in t {
        for ((x, y), u) in &r_tilde(r, *a, *b) {
            out.add_term((*x, *y, *c), s.mul_ref(u));
        }
    }
    out
}

fn on_last<C: Coeff>(r: &RackBialgebra<C>, t: &Tensor3<C>) -> Tensor3<C> {
    let mut out = Tensor3::zero();
    for ((a, b, c), s) in t {
        for ((x, y), u) in &r_tilde(r, *b, *c) {
            out.add_term((*a, *x, *y), s.mul_ref(u));
        }
    }
    out
}

/// `(R̃⊗id)(id⊗R̃)(R̃⊗id) = (id⊗R̃)(R̃⊗id)(id⊗R̃)` on every basis tensor.
pub fn yang_baxter_check<C: Coeff>(r: &RackBialgebra<C>) -> CheckResult {
    let n = r.dim();
    let c = r.coalgebra();
    let outcomes = map_indices(n * n * n, |t| {
        let (a, b, d) = (t / (n * n), (t / n) % n, t % n);
        let start = Tensor3::basis((a, b, d));
        let lhs = on_first(r, &on_last(r, &on_first(r, &start)));
        let rhs = on_last(r, &on_first(r, &on_last(r, &start)));
        (lhs != rhs).then(|| {
            let show = |x: &Tensor3<C>| {
                if x.is_zero() {
                    return "0".to_string();
                }
                x.iter()
                    .map(|((i, j, k), s)| {
                        format!(
                            "({})*{}⊗{}⊗{}",
                            s.render(),
                            c.label(*i),
                            c.label(*j),
                            c.label(*k)
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            witness(
                vec![c.label(a).into(), c.label(b).into(), c.label(d).into()],
                show(&lhs),
                show(&rhs),
            )
        })
    });
    CheckResult::from_outcomes("yang_baxter", outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::finite::{from_finite_rack, kx_from_table, FiniteRack};

    #[test]
    fn dihedral_racks_solve_ybe() {
        for n in [3, 5] {
            let k = from_finite_rack(&FiniteRack::dihedral_with_unit(n));
            assert!(yang_baxter_check(&k).passed());
        }
    }

    #[test]
    fn additive_table_fails() {
        let op: Vec<Vec<usize>> = (0..3)
            .map(|x| (0..3).map(|y| (x + y) % 3).collect())
            .collect();
        let k = kx_from_table(3, 0, &op);
        let res = yang_baxter_check(&k);
        assert!(!res.passed());
        assert!(res.first().is_some());
    }
}
