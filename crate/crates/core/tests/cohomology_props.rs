use leibrack::defcohom::{cohomology, equivalent, Cochain, DeformationComplex, Face};
use leibrack::foundation::int;
use leibrack::leibniz::{catalog, IdealChoice};
use leibrack::rack::{from_finite_rack, uar, FiniteRack};
use proptest::prelude::*;

fn uar1(name: &str) -> DeformationComplex {
    let h = catalog(name).unwrap();
    DeformationComplex::new(uar(&h, 1, &IdealChoice::Squares).unwrap().rack().clone()).unwrap()
}

fn combination(basis: &[Cochain], coeffs: &[i64], dim: usize, n: usize) -> Cochain {
    basis
        .iter()
        .zip(coeffs)
        .fold(Cochain::zero(dim, n), |acc, (w, c)| {
            acc.plus(&w.scaled(&int(*c)))
        })
}

#[test]
fn dimensions_are_consistent() {
    for name in ["sq2", "leib2", "heisenberg"] {
        let cx = uar1(name);
        let d1 = cohomology(&cx, 1).unwrap();
        let d2 = cohomology(&cx, 2).unwrap();
        assert_eq!(d1.coboundaries, 0, "{name}");
        assert_eq!(d1.cohomology, d1.cocycles, "{name}");
        // B² is the image of C¹, so its dimension is dim C¹ − dim Z¹.
        assert_eq!(d2.coboundaries, d1.cochains - d1.cocycles, "{name}");
        assert!(d2.cocycles >= d2.coboundaries, "{name}");
    }
}

#[test]
fn finite_rack_complex_is_trivial() {
    let cx = DeformationComplex::new(from_finite_rack(&FiniteRack::dihedral_with_unit(3))).unwrap();
    assert_eq!(cohomology(&cx, 1).unwrap().cochains, 0);
}

#[test]
fn mu_n_cochain_agrees_with_iterated_products() {
    let cx = uar1("sq2");
    let r = cx.rack();
    let mu3 = cx.mu_cochain(3);
    let d = cx.dim();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let inner = r.product_basis(b, c).clone();
                let expected = r.left(a, &inner);
                assert_eq!(mu3.value(&[a, b, c]), &expected);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differential_squares_to_zero_on_combinations(coeffs in prop::collection::vec(-4i64..=4, 36)) {
        let cx = uar1("sq2");
        let c2 = cx.coderivation_space(2).unwrap();
        let w = combination(&c2, &coeffs, cx.dim(), 2);
        prop_assert!(cx.differential(&cx.differential(&w)).is_zero());
    }

    #[test]
    fn differential_is_the_alternating_face_sum(coeffs in prop::collection::vec(-4i64..=4, 9)) {
        let cx = uar1("heisenberg");
        let c1 = cx.coderivation_space(1).unwrap();
        let w = combination(&c1, &coeffs, cx.dim(), 1);
        let act = cx.face(Face::Act(1), &w).unwrap();
        let inner = cx.face(Face::Inner(1), &w).unwrap();
        let last = cx.face(Face::Last, &w).unwrap();
        prop_assert_eq!(cx.differential(&w), act.minus(&inner).plus(&last));
    }

    #[test]
    fn coboundaries_are_recognised(coeffs in prop::collection::vec(-4i64..=4, 9), shift in prop::collection::vec(-4i64..=4, 9)) {
        let cx = uar1("heisenberg");
        let c1 = cx.coderivation_space(1).unwrap();
        let base = cx.differential(&combination(&c1, &coeffs, cx.dim(), 1));
        let moved = base.plus(&cx.differential(&combination(&c1, &shift, cx.dim(), 1)));
        let eq = equivalent(&cx, &base, &moved).unwrap();
        prop_assert!(eq.equivalent && eq.consistent);
        let w = eq.witness.unwrap();
        prop_assert_eq!(cx.differential(&w), base.minus(&moved));
    }
}
