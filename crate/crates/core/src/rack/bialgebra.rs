use std::sync::Arc;

use crate::check::{map_indices, witness, CheckReport, CheckResult};
use crate::foundation::{Coeff, ExactMatrix, Scalar, Vector};

use super::coalgebra::{coalgebra_morphism_check, Coalgebra, Tensor2};
use super::RackError;

/// A coalgebra together with a rack product table `table[a][b] = a▷b`,
/// with coefficients in `C` (rationals, or ħ-polynomials for deformations).
#[derive(Clone, Debug, PartialEq)]
pub struct RackBialgebra<C: Coeff = Scalar> {
    coalg: Arc<Coalgebra>,
    table: Vec<Vec<Vector<C>>>,
}

impl<C: Coeff> RackBialgebra<C> {
    pub fn new(coalg: Arc<Coalgebra>, table: Vec<Vec<Vector<C>>>) -> Result<Self, RackError> {
        let n = coalg.dim();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(RackError::MalformedCoalgebra(
                "product table does not match the coalgebra dimension".into(),
            ));
        }
        if table.iter().flatten().any(|v| v.keys().any(|&i| i >= n)) {
            return Err(RackError::MalformedCoalgebra(
                "product value index out of range".into(),
            ));
        }
        Ok(RackBialgebra { coalg, table })
    }

    /// Builds the table from a function on basis pairs.
    pub fn from_fn(
        coalg: Arc<Coalgebra>,
        f: impl Fn(usize, usize) -> Vector<C> + Sync + Send,
    ) -> Self {
        let n = coalg.dim();
        let flat = map_indices(n * n, |t| f(t / n, t % n));
        let mut table = Vec::with_capacity(n);
        let mut it = flat.into_iter();
        for _ in 0..n {
            table.push(it.by_ref().take(n).collect());
        }
        RackBialgebra { coalg, table }
    }

    pub fn dim(&self) -> usize {
        self.coalg.dim()
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalg
    }

    pub fn table(&self) -> &[Vec<Vector<C>>] {
        &self.table
    }

    pub fn product_basis(&self, a: usize, b: usize) -> &Vector<C> {
        &self.table[a][b]
    }

    pub fn product(&self, x: &Vector<C>, y: &Vector<C>) -> Vector<C> {
        let mut out = Vector::zero();
        for (a, c) in x {
            for (b, d) in y {
                out.add_scaled(&self.table[*a][*b], &c.mul_ref(d));
            }
        }
        out
    }

    /// `a▷y` for a basis element `a`.
    pub fn left(&self, a: usize, y: &Vector<C>) -> Vector<C> {
        let mut out = Vector::zero();
        for (b, d) in y {
            out.add_scaled(&self.table[a][*b], d);
        }
        out
    }

    /// Replaces one table entry (used for mutation tests).
    pub fn with_entry(mut self, a: usize, b: usize, value: Vector<C>) -> Self {
        self.table[a][b] = value;
        self
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> RackBialgebra<D> {
        RackBialgebra {
            coalg: Arc::clone(&self.coalg),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|v| v.map_coeffs(&f)).collect())
                .collect(),
        }
    }

    pub fn render(&self, v: &Vector<C>) -> String {
        self.coalg.render(v)
    }

    pub fn label(&self, i: usize) -> String {
        self.coalg.label(i).to_string()
    }
}

impl RackBialgebra<Scalar> {
    /// The table as a `dim × dim²` matrix, column `a·dim + b` holding `a▷b`.
    pub fn as_matrix(&self) -> ExactMatrix {
        let n = self.dim();
        let mut m = ExactMatrix::zeros(n, n * n);
        for a in 0..n {
            for b in 0..n {
                for (k, v) in &self.table[a][b] {
                    m.set(*k, a * n + b, v.clone());
                }
            }
        }
        m
    }
}

/// Exhaustive verification of the coalgebra laws, the product being a
/// coalgebra morphism, the unit laws and self-distributivity.
pub fn verify_rack_axioms<C: Coeff>(r: &RackBialgebra<C>) -> CheckReport {
    let c = r.coalgebra();
    let n = r.dim();
    let mut report = c.check();

    let pair_outcomes = map_indices(n * n, |t| {
        let (a, b) = (t / n, t % n);
        let ab = r.product_basis(a, b);
        let lhs = c.delta_vec(ab);
        let mut rhs: Tensor2<C> = Tensor2::zero();
        for ((a1, a2), s) in c.delta(a) {
            for ((b1, b2), u) in c.delta(b) {
                let coeff = C::from_scalar(s * u);
                let x = r.product_basis(*a1, *b1);
                let y = r.product_basis(*a2, *b2);
                for (i, p) in x {
                    for (j, q) in y {
                        rhs.add_term((*i, *j), p.mul_ref(q).mul_ref(&coeff));
                    }
                }
            }
        }
        let morph = (lhs != rhs).then(|| {
            witness(
                vec![r.label(a), r.label(b)],
                c.render_tensor(&lhs),
                c.render_tensor(&rhs),
            )
        });
        let e_lhs = c.eps_vec(ab);
        let e_rhs = C::from_scalar(c.eps(a) * c.eps(b));
        let counit = (e_lhs != e_rhs)
            .then(|| witness(vec![r.label(a), r.label(b)], e_lhs.render(), e_rhs.render()));
        (morph, counit)
    });
    let (morph, counit): (Vec<_>, Vec<_>) = pair_outcomes.into_iter().unzip();
    report.push(CheckResult::from_outcomes(
        "product_coalgebra_morphism",
        morph,
    ));
    report.push(CheckResult::from_outcomes("product_counit", counit));

    let one: Vector<C> = c.unit_as();
    let mut unit_left = CheckResult::new("unit_left");
    let mut unit_right = CheckResult::new("unit_right");
    for a in 0..n {
        let ea: Vector<C> = Vector::basis(a);
        let lhs = r.product(&one, &ea);
        unit_left.record(lhs == ea, || {
            witness(vec!["1".into(), r.label(a)], r.render(&lhs), r.render(&ea))
        });
        let lhs = r.product(&ea, &one);
        let rhs = one.scaled_by(c.eps(a));
        unit_right.record(lhs == rhs, || {
            witness(vec![r.label(a), "1".into()], r.render(&lhs), r.render(&rhs))
        });
    }
    report.push(unit_left);
    report.push(unit_right);

    report.push(self_distributivity(r));
    report
}

/// `a▷(b▷c) = Σ (a1▷b)▷(a2▷c)` on all basis triples.
pub fn self_distributivity<C: Coeff>(r: &RackBialgebra<C>) -> CheckResult {
    let c = r.coalgebra();
    let n = r.dim();
    let outcomes = map_indices(n * n * n, |t| {
        let (a, b, cc) = (t / (n * n), (t / n) % n, t % n);
        let lhs = r.left(a, r.product_basis(b, cc));
        let mut rhs = Vector::zero();
        for ((a1, a2), s) in c.delta(a) {
            let x = r.product_basis(*a1, b);
            let y = r.product_basis(*a2, cc);
            rhs.add_scaled(&r.product(x, y), &C::from_scalar(s.clone()));
        }
        (lhs != rhs).then(|| {
            witness(
                vec![r.label(a), r.label(b), r.label(cc)],
                r.render(&lhs),
                r.render(&rhs),
            )
        })
    });
    CheckResult::from_outcomes("self_distributivity", outcomes)
}

/// `a▷₀b = ε(a)b`.
pub fn trivial_product(coalg: Arc<Coalgebra>) -> Result<RackBialgebra, RackError> {
    let report = coalg.check();
    if let Some(bad) = report.failing().next() {
        return Err(RackError::MalformedCoalgebra(bad.name.clone()));
    }
    let c = Arc::clone(&coalg);
    Ok(RackBialgebra::from_fn(coalg, move |a, b| {
        Vector::basis(b).scaled(c.eps(a))
    }))
}

/// The `f`-gauge `a▷_f b = f(a)▷b`; `f` must be a coalgebra morphism fixing
/// `1` and satisfying `f(a▷b) = a▷f(b)`.
pub fn gauge(r: &RackBialgebra, f: &ExactMatrix) -> Result<RackBialgebra, RackError> {
    let c = r.coalgebra();
    let n = r.dim();
    if f.rows() != n || f.cols() != n {
        return Err(RackError::NotCoalgebraMorphism("wrong matrix shape".into()));
    }
    let morph = coalgebra_morphism_check(f, c, c);
    if !morph.passed() {
        return Err(RackError::NotCoalgebraMorphism(
            morph.first().map(|w| w.to_string()).unwrap_or_default(),
        ));
    }
    let apply = |v: &Vector| -> Vector {
        let dense = f.apply(&v.to_dense(n));
        Vector::from_dense(&dense)
    };
    if &apply(c.unit()) != c.unit() {
        return Err(RackError::NotCoalgebraMorphism("f(1) != 1".into()));
    }
    for a in 0..n {
        for b in 0..n {
            let lhs = apply(r.product_basis(a, b));
            let rhs = r.left(a, &apply(&Vector::basis(b)));
            if lhs != rhs {
                return Err(RackError::NotEquivariant(format!(
                    "({}, {}): {} != {}",
                    c.label(a),
                    c.label(b),
                    c.render(&lhs),
                    c.render(&rhs)
                )));
            }
        }
    }
    Ok(RackBialgebra::from_fn(Arc::clone(c), |a, b| {
        r.product(&apply(&Vector::basis(a)), &Vector::basis(b))
    }))
}

/// Coalgebra morphism plus multiplicativity `f(a▷b) = f(a)▷f(b)`.
pub fn rack_morphism_check(
    f: &ExactMatrix,
    source: &RackBialgebra,
    target: &RackBialgebra,
) -> CheckReport {
    let mut report = CheckReport::default();
    report.push(coalgebra_morphism_check(
        f,
        source.coalgebra(),
        target.coalgebra(),
    ));
    let apply = |v: &Vector| Vector::from_dense(&f.apply(&v.to_dense(source.dim())));
    let mut mult = CheckResult::new("multiplicative");
    for a in 0..source.dim() {
        for b in 0..source.dim() {
            let lhs = apply(source.product_basis(a, b));
            let rhs = target.product(&apply(&Vector::basis(a)), &apply(&Vector::basis(b)));
            mult.record(lhs == rhs, || {
                witness(
                    vec![source.label(a), source.label(b)],
                    target.render(&lhs),
                    target.render(&rhs),
                )
            });
        }
    }
    report.push(mult);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::int;
    use crate::symcoalg::SymBasis;

    fn sym(dim: usize, k: usize) -> Arc<Coalgebra> {
        Arc::new(Coalgebra::symmetric(&SymBasis::new(dim, k), None))
    }

    #[test]
    fn trivial_products_pass() {
        let r = trivial_product(sym(2, 2)).unwrap();
        assert!(verify_rack_axioms(&r).passed());
        let r1 = trivial_product(sym(2, 1)).unwrap();
        assert!(r1.product_basis(1, 2).is_zero());
        assert_eq!(r1.product_basis(0, 1), &Vector::basis(1));
        assert!(r1.product_basis(1, 0).is_zero());
    }

    #[test]
    fn perturbed_trivial_product_fails() {
        let r = trivial_product(sym(2, 1))
            .unwrap()
            .with_entry(1, 1, Vector::basis(0));
        let rep = verify_rack_axioms(&r);
        assert!(!rep.passed());
        assert!(!rep.get("product_counit").unwrap().passed());
    }

    #[test]
    fn gauge_identity_is_noop() {
        let r = trivial_product(sym(2, 1)).unwrap();
        let g = gauge(&r, &ExactMatrix::identity(3)).unwrap();
        assert_eq!(g, r);
        assert_eq!(int(1), *r.coalgebra().eps(0));
    }
}
