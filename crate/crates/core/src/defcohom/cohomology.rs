use std::sync::Arc;

use crate::check::CheckReport;
use crate::foundation::{int, linalg::span_rank, ExactMatrix, HPoly, Scalar, Vector};
use crate::rack::{trivial_product, verify_rack_axioms, RackBialgebra, Uar};

use super::complex::{Cochain, DeformationComplex};
use super::DefError;

/// `(dim Cⁿ, dim Zⁿ, dim Bⁿ, dim Hⁿ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub n: usize,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

fn image_rank(cx: &DeformationComplex, basis: &[Cochain], n: usize) -> usize {
    if basis.is_empty() {
        return 0;
    }
    let images: Vec<Vec<Scalar>> = basis.iter().map(|w| cx.differential(w).to_flat()).collect();
    span_rank(&images, cx.dim() * cx.dim().pow(n as u32 + 1))
}

/// Dimensions of cocycles, coboundaries and cohomology in degree `n`
/// (`C⁰ = 0`).
pub fn cohomology(cx: &DeformationComplex, n: usize) -> Result<CohomologyDims, DefError> {
    let cn = cx.coderivation_space(n)?;
    let rank_n = image_rank(cx, &cn, n);
    let coboundaries = if n <= 1 {
        0
    } else {
        let prev = cx.coderivation_space(n - 1)?;
        image_rank(cx, &prev, n - 1)
    };
    let cocycles = cn.len() - rank_n;
    Ok(CohomologyDims {
        n,
        cochains: cn.len(),
        cocycles,
        coboundaries,
        cohomology: cocycles - coboundaries,
    })
}

/// Result of comparing two infinitesimal deformations.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `α` with `μ₁ − μ₁′ = dα`, when one exists.
    pub witness: Option<Cochain>,
    /// Whether `φ = id + ħα` intertwines the two products modulo `ħ²`.
    pub consistent: bool,
}

fn require_cocycle(cx: &DeformationComplex, w: &Cochain) -> Result<(), DefError> {
    if w.degree() != 2 {
        return Err(DefError::DegreeMismatch {
            expected: 2,
            found: w.degree(),
        });
    }
    if !cx.coderivation_check(w).passed() {
        return Err(DefError::NotCoderivation);
    }
    if !cx.differential(w).is_zero() {
        return Err(DefError::NotCocycle);
    }
    Ok(())
}

/// `α(a▷b) + μ₁(a,b) = μ₁′(a,b) + α(a)▷b + a▷α(b)` on all basis pairs.
pub fn intertwines(
    cx: &DeformationComplex,
    mu1: &Cochain,
    mu1p: &Cochain,
    alpha: &Cochain,
) -> bool {
    let r = cx.rack();
    let d = cx.dim();
    (0..d).all(|a| {
        (0..d).all(|b| {
            let lhs = alpha
                .eval(&super::complex::expand(&[r.product_basis(a, b).clone()]))
                .plus(mu1.value(&[a, b]));
            let rhs = mu1p
                .value(&[a, b])
                .plus(&r.product(alpha.value(&[a]), &Vector::basis(b)))
                .plus(&r.left(a, alpha.value(&[b])));
            lhs == rhs
        })
    })
}

/// Decides whether `μ₁ − μ₁′ ∈ B²` and returns the witness `α ∈ C¹`.
pub fn equivalent(
    cx: &DeformationComplex,
    mu1: &Cochain,
    mu1p: &Cochain,
) -> Result<Equivalence, DefError> {
    require_cocycle(cx, mu1)?;
    require_cocycle(cx, mu1p)?;
    let target = mu1.minus(mu1p);
    if target.is_zero() {
        let alpha = Cochain::zero(cx.dim(), 1);
        let consistent = intertwines(cx, mu1, mu1p, &alpha);
        return Ok(Equivalence {
            equivalent: true,
            witness: Some(alpha),
            consistent,
        });
    }
    let c1 = cx.coderivation_space(1)?;
    if c1.is_empty() {
        return Ok(Equivalence {
            equivalent: false,
            witness: None,
            consistent: false,
        });
    }
    let images: Vec<Vec<Scalar>> = c1.iter().map(|w| cx.differential(w).to_flat()).collect();
    let rows = images[0].len();
    let mut m = ExactMatrix::zeros(rows, c1.len());
    for (k, img) in images.iter().enumerate() {
        for (r, v) in img.iter().enumerate() {
            if *v != int(0) {
                m.set(r, k, v.clone());
            }
        }
    }
    match m.solve(&target.to_flat()) {
        None => Ok(Equivalence {
            equivalent: false,
            witness: None,
            consistent: false,
        }),
        Some(x) => {
            let mut alpha = Cochain::zero(cx.dim(), 1);
            for (k, coeff) in x.iter().enumerate() {
                if *coeff != int(0) {
                    alpha = alpha.plus(&c1[k].scaled(coeff));
                }
            }
            let consistent = intertwines(cx, mu1, mu1p, &alpha);
            Ok(Equivalence {
                equivalent: true,
                witness: Some(alpha),
                consistent,
            })
        }
    }
}

/// A first-order deformation `μ₀ + ħμ₁` of a rack product.
#[derive(Clone, Debug)]
pub struct InfinitesimalDeformation {
    mu1: Cochain,
    deformed: RackBialgebra<HPoly>,
}

impl InfinitesimalDeformation {
    /// Verifies the rack-bialgebra axioms of `μ₀ + ħμ₁` over `K[ħ]/(ħ²)`.
    pub fn new(cx: &DeformationComplex, mu1: Cochain) -> Result<Self, DefError> {
        if mu1.degree() != 2 || mu1.dim() != cx.dim() {
            return Err(DefError::DegreeMismatch {
                expected: 2,
                found: mu1.degree(),
            });
        }
        let deformed = deform(cx.rack(), &mu1);
        let report = verify_rack_axioms(&deformed);
        if let Some(bad) = report.failing().next() {
            return Err(DefError::NotDeformation(format!(
                "{}: {}",
                bad.name,
                bad.first().map(|w| w.to_string()).unwrap_or_default()
            )));
        }
        Ok(InfinitesimalDeformation { mu1, deformed })
    }

    pub fn mu1(&self) -> &Cochain {
        &self.mu1
    }

    pub fn deformed(&self) -> &RackBialgebra<HPoly> {
        &self.deformed
    }
}

/// `μ₀ + ħμ₁` with coefficients modulo `ħ²`.
pub fn deform(r: &RackBialgebra, mu1: &Cochain) -> RackBialgebra<HPoly> {
    RackBialgebra::from_fn(Arc::clone(r.coalgebra()), |a, b| {
        let mut out: Vector<HPoly> = r
            .product_basis(a, b)
            .map_coeffs(|c| HPoly::constant(c.clone()).with_truncation(Some(1)));
        for (k, c) in mu1.value(&[a, b]) {
            out.add_term(*k, HPoly::monomial(c.clone(), 1).with_truncation(Some(1)));
        }
        out
    })
}

/// Checks the axioms of `μ₀ + ħμ₁` without constructing the wrapper.
pub fn first_order_axioms(r: &RackBialgebra, mu1: &Cochain) -> CheckReport {
    verify_rack_axioms(&deform(r, mu1))
}

/// The trivial product on the coalgebra of `u`, with `μ₁(a⊗b) = π₁(a)▷b`.
pub fn first_order_from_uar(u: &Uar) -> (RackBialgebra, Cochain) {
    let coalg = Arc::clone(u.coalgebra());
    let trivial = trivial_product(coalg).expect("symmetric coalgebra is valid");
    let d = u.basis().len();
    let mut values = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            if u.basis().monomial(a).degree() == 1 {
                values.push(u.rack().product_basis(a, b).clone());
            } else {
                values.push(Vector::zero());
            }
        }
    }
    let mu1 = Cochain::from_values(d, 2, values).expect("square table");
    (trivial, mu1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leibniz::{catalog, IdealChoice};
    use crate::rack::uar;

    #[test]
    fn mu1_is_cocycle_for_trivial_sq2() {
        let u = uar(&catalog("sq2").unwrap(), 1, &IdealChoice::Squares).unwrap();
        let (r0, mu1) = first_order_from_uar(&u);
        let cx = DeformationComplex::new(r0).unwrap();
        assert!(cx.coderivation_check(&mu1).passed());
        assert!(cx.differential(&mu1).is_zero());
        assert!(InfinitesimalDeformation::new(&cx, mu1.clone()).is_ok());
        let e = equivalent(&cx, &mu1, &mu1).unwrap();
        assert!(e.equivalent && e.witness.unwrap().is_zero() && e.consistent);
        let dims = cohomology(&cx, 2).unwrap();
        assert!(dims.coboundaries <= dims.cocycles);
        assert!(dims.cocycles >= 1);
    }

    #[test]
    fn empty_cochains_give_zero_cohomology() {
        let k = crate::rack::from_finite_rack(&crate::rack::FiniteRack::dihedral_with_unit(3));
        let cx = DeformationComplex::new(k).unwrap();
        let dims = cohomology(&cx, 2).unwrap();
        assert_eq!(
            (dims.cocycles, dims.coboundaries, dims.cohomology),
            (0, 0, 0)
        );
    }
}
