use crate::check::{witness, CheckReport, CheckResult};
use crate::foundation::{int, Coeff, Combination, ExactMatrix, Scalar, Vector};
use crate::symcoalg::{coproduct_monomial, SymBasis};

use super::RackError;

/// Element of `C ⊗ C` in basis coordinates.
pub type Tensor2<C = Scalar> = Combination<(usize, usize), C>;

/// A finite-dimensional coassociative, counital, coaugmented coalgebra
/// given by basis tables.
#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra {
    labels: Vec<String>,
    delta: Vec<Tensor2>,
    eps: Vec<Scalar>,
    unit: Vector,
}

impl Coalgebra {
    /// Builds the coalgebra and verifies its laws.
    pub fn new(
        labels: Vec<String>,
        delta: Vec<Tensor2>,
        eps: Vec<Scalar>,
        unit: Vector,
    ) -> Result<Self, RackError> {
        let c = Coalgebra::unchecked(labels, delta, eps, unit)?;
        let report = c.check();
        let problem = report.failing().next().map(|bad| {
            format!(
                "{} fails at {}",
                bad.name,
                bad.first().map(|w| w.to_string()).unwrap_or_default()
            )
        });
        match problem {
            None => Ok(c),
            Some(msg) => Err(RackError::MalformedCoalgebra(msg)),
        }
    }

    /// Builds the coalgebra checking only table shapes.
    pub fn unchecked(
        labels: Vec<String>,
        delta: Vec<Tensor2>,
        eps: Vec<Scalar>,
        unit: Vector,
    ) -> Result<Self, RackError> {
        let n = labels.len();
        if delta.len() != n || eps.len() != n {
            return Err(RackError::MalformedCoalgebra(format!(
                "table sizes {} / {} / {} disagree",
                n,
                delta.len(),
                eps.len()
            )));
        }
        let in_range = delta
            .iter()
            .all(|t| t.keys().all(|(a, b)| *a < n && *b < n))
            && unit.keys().all(|i| *i < n);
        if !in_range {
            return Err(RackError::MalformedCoalgebra("index out of range".into()));
        }
        Ok(Coalgebra {
            labels,
            delta,
            eps,
            unit,
        })
    }

    /// `S(h)_(k)` on its degree-lex monomial basis.
    pub fn symmetric(basis: &SymBasis, names: Option<&[String]>) -> Self {
        let labels = basis.monomials().iter().map(|m| m.render(names)).collect();
        let delta = basis
            .monomials()
            .iter()
            .map(|m| {
                coproduct_monomial::<Scalar>(m).map_linear(|(l, r)| {
                    Tensor2::basis((
                        basis.index_of(l).expect("sub-monomial"),
                        basis.index_of(r).expect("sub-monomial"),
                    ))
                })
            })
            .collect();
        let eps = basis
            .monomials()
            .iter()
            .map(|m| if m.is_one() { int(1) } else { int(0) })
            .collect();
        Coalgebra {
            labels,
            delta,
            eps,
            unit: Vector::basis(0),
        }
    }

    /// Coalgebra with every basis element set-like; `unit` is the basepoint.
    pub fn set_like(labels: Vec<String>, unit: usize) -> Self {
        let n = labels.len();
        Coalgebra {
            labels,
            delta: (0..n).map(|i| Tensor2::basis((i, i))).collect(),
            eps: vec![int(1); n],
            unit: Vector::basis(unit),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn delta(&self, i: usize) -> &Tensor2 {
        &self.delta[i]
    }

    pub fn eps(&self, i: usize) -> &Scalar {
        &self.eps[i]
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    /// Index of the unit when it is a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        if self.unit.len() == 1 {
            let (i, c) = self.unit.iter().next().expect("one term");
            (c == &int(1)).then_some(*i)
        } else {
            None
        }
    }

    pub fn delta_vec<C: Coeff>(&self, v: &Vector<C>) -> Tensor2<C> {
        let mut out = Tensor2::zero();
        for (i, c) in v {
            for (pair, d) in &self.delta[*i] {
                out.add_term(*pair, c.mul_ref(&C::from_scalar(d.clone())));
            }
        }
        out
    }

    pub fn eps_vec<C: Coeff>(&self, v: &Vector<C>) -> C {
        let mut out = C::zero();
        for (i, c) in v {
            out = out.add_ref(&c.scale(&self.eps[*i]));
        }
        out
    }

    pub fn unit_as<C: Coeff>(&self) -> Vector<C> {
        self.unit.map_coeffs(|c| C::from_scalar(c.clone()))
    }

    /// `Δ^{(n)}`: the `n`-fold tensor expansion (`n ≥ 1` factors).
    pub fn iterated_delta(&self, i: usize, n: usize) -> Combination<Vec<usize>, Scalar> {
        let mut acc: Combination<Vec<usize>, Scalar> = Combination::basis(vec![i]);
        for _ in 1..n {
            acc = acc.map_linear(|t| {
                let (last, rest) = t.split_last().expect("nonempty");
                self.delta[*last].map_linear(|(a, b)| {
                    let mut v = rest.to_vec();
                    v.push(*a);
                    v.push(*b);
                    Combination::basis(v)
                })
            });
        }
        acc
    }

    pub fn is_cocommutative(&self) -> bool {
        self.delta.iter().all(|t| {
            let swapped: Tensor2 = t.map_linear(|(a, b)| Tensor2::basis((*b, *a)));
            &swapped == t
        })
    }

    /// Coassociativity, counit laws and `Δ(1) = 1⊗1`, `ε(1) = 1`.
    pub fn check(&self) -> CheckReport {
        let n = self.dim();
        let mut report = CheckReport::default();
        let mut coassoc = CheckResult::new("coassociativity");
        let mut counit = CheckResult::new("counit");
        for i in 0..n {
            let left: Combination<(usize, usize, usize), Scalar> =
                self.delta[i].map_linear(|(a, b)| {
                    self.delta[*a].map_linear(|(x, y)| Combination::basis((*x, *y, *b)))
                });
            let right: Combination<(usize, usize, usize), Scalar> =
                self.delta[i].map_linear(|(a, b)| {
                    self.delta[*b].map_linear(|(x, y)| Combination::basis((*a, *x, *y)))
                });
            coassoc.record(left == right, || {
                witness(
                    vec![self.labels[i].clone()],
                    format!("{left:?}"),
                    format!("{right:?}"),
                )
            });
            let l: Vector =
                self.delta[i].map_linear(|(a, b)| Vector::basis(*b).scaled(&self.eps[*a]));
            let r: Vector =
                self.delta[i].map_linear(|(a, b)| Vector::basis(*a).scaled(&self.eps[*b]));
            let e = Vector::basis(i);
            counit.record(l == e && r == e, || {
                witness(
                    vec![self.labels[i].clone()],
                    self.render(&l),
                    self.render(&r),
                )
            });
        }
        report.push(coassoc);
        report.push(counit);
        let mut unit = CheckResult::new("unit_group_like");
        let du = self.delta_vec(&self.unit);
        let expected: Tensor2 = self
            .unit
            .map_linear(|a| self.unit.map_linear(|b| Tensor2::basis((*a, *b))));
        let eu = self.eps_vec(&self.unit);
        unit.record(du == expected && eu == int(1), || {
            witness(
                vec!["1".into()],
                format!("{du:?}, eps {eu}"),
                "1⊗1, eps 1".into(),
            )
        });
        report.push(unit);
        report
    }

    /// Renders a vector with the basis labels, e.g. `2/1*e1•e2`.
    pub fn render<C: Coeff>(&self, v: &Vector<C>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| format!("({})*{}", c.render(), self.labels[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn render_tensor<C: Coeff>(&self, t: &Tensor2<C>) -> String {
        if t.is_zero() {
            return "0".into();
        }
        t.iter()
            .map(|((a, b), c)| format!("({})*{}⊗{}", c.render(), self.labels[*a], self.labels[*b]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Checks that `f` (a `target × source` matrix) is a coalgebra morphism.
pub fn coalgebra_morphism_check(
    f: &ExactMatrix,
    source: &Coalgebra,
    target: &Coalgebra,
) -> CheckResult {
    let mut res = CheckResult::new("coalgebra_morphism");
    let img = |i: usize| -> Vector { Vector::from_terms(f.column(i).into_iter().enumerate()) };
    for i in 0..source.dim() {
        let fi = img(i);
        let lhs = target.delta_vec(&fi);
        let rhs: Tensor2 = source.delta(i).map_linear(|(a, b)| {
            let (fa, fb) = (img(*a), img(*b));
            fa.map_linear(|x| fb.map_linear(|y| Tensor2::basis((*x, *y))))
        });
        let eps_ok = target.eps_vec(&fi) == *source.eps(i);
        res.record(lhs == rhs && eps_ok, || {
            witness(
                vec![source.label(i).to_string()],
                target.render_tensor(&lhs),
                target.render_tensor(&rhs),
            )
        });
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_coalgebra_is_valid() {
        let c = Coalgebra::symmetric(&SymBasis::new(2, 3), None);
        assert!(c.check().passed());
        assert!(c.is_cocommutative());
        assert_eq!(c.unit_index(), Some(0));
    }

    #[test]
    fn broken_counit_is_reported() {
        let mut eps = vec![int(1), int(1)];
        eps[1] = int(2);
        let labels = vec!["a".to_string(), "b".to_string()];
        let delta = vec![Tensor2::basis((0, 0)), Tensor2::basis((1, 1))];
        assert!(matches!(
            Coalgebra::new(labels, delta, eps, Vector::basis(0)),
            Err(RackError::MalformedCoalgebra(_))
        ));
    }

    #[test]
    fn iterated_coproduct_of_primitive() {
        let c = Coalgebra::symmetric(&SymBasis::new(1, 1), None);
        let d3 = c.iterated_delta(1, 3);
        assert_eq!(d3.len(), 3);
        assert_eq!(d3.get(&vec![0, 1, 0]), int(1));
    }
}
