use leibrack::foundation::{int, HPoly, Scalar};
use leibrack::leibniz::{catalog, LeibnizAlgebra, CATALOG_NAMES};
use leibrack::starprod::{poisson, star, star_h, PolyFun};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `−Σ c^k_{ij} ∂_i f(0) ∂_j g α_k`, written directly from the structure constants.
fn poisson_oracle(h: &LeibnizAlgebra, f: &PolyFun, g: &PolyFun) -> PolyFun {
    let n = h.dim();
    let mut out = PolyFun::zero(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        let fi = f.derivative_at_zero(&e);
        for j in 0..n {
            let dg = g.derivative(j);
            for k in 0..n {
                let c = h.structure_constant(i, j, k);
                let coeff: Scalar = -(&fi * &c);
                if coeff != int(0) {
                    out = out.plus(&PolyFun::var(n, k).mul(&dg).scaled(&coeff));
                }
            }
        }
    }
    out
}

fn algebra() -> impl Strategy<Value = LeibnizAlgebra> {
    prop::sample::select(CATALOG_NAMES.to_vec()).prop_map(|n| catalog(n).unwrap())
}

fn polys(h: &LeibnizAlgebra, seed: u64, degree: u32) -> (PolyFun, PolyFun) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = h.dim();
    (
        PolyFun::random(&mut rng, n, degree, 3),
        PolyFun::random(&mut rng, n, degree, 3),
    )
}

#[test]
fn alpha1_star_alpha1_on_sq2() {
    let h = catalog("sq2").unwrap();
    let a1 = PolyFun::var(2, 0);
    let got = star(&h, &a1, &a1, 4).unwrap();
    let expected = PolyFun::var(2, 1).lift().scaled(&HPoly::hbar());
    assert_eq!(got, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poisson_matches_oracle(h in algebra(), seed in any::<u64>()) {
        let (f, g) = polys(&h, seed, 3);
        prop_assert_eq!(poisson(&h, &f, &g).unwrap(), poisson_oracle(&h, &f, &g));
    }

    #[test]
    fn first_two_orders(h in algebra(), seed in any::<u64>()) {
        let (f, g) = polys(&h, seed, 3);
        let p = star(&h, &f, &g, 4).unwrap();
        let f0 = f.coefficient(&vec![0; h.dim()]);
        prop_assert_eq!(p.hbar_coefficient(0), g.scaled(&f0));
        prop_assert_eq!(p.hbar_coefficient(1), poisson_oracle(&h, &f, &g).neg());
    }

    #[test]
    fn affine_left_factor_is_exact_at_first_order(h in algebra(), seed in any::<u64>()) {
        let (f, g) = polys(&h, seed, 3);
        let f = f.truncate(1);
        let p = star(&h, &f, &g, 4).unwrap();
        let f0 = f.coefficient(&vec![0; h.dim()]);
        let expected = g.scaled(&f0).lift().plus(&poisson_oracle(&h, &f, &g).neg().lift().scaled(&HPoly::hbar()));
        prop_assert_eq!(p, expected);
    }

    #[test]
    fn bilinear(h in algebra(), seed in any::<u64>(), a in -3i64..=3) {
        let (f, g) = polys(&h, seed, 2);
        let (_, g2) = polys(&h, seed ^ 0x5555, 2);
        let s = |x: &PolyFun, y: &PolyFun| star(&h, x, y, 3).unwrap();
        let combo = g.plus(&g2.scaled(&int(a)));
        prop_assert_eq!(s(&f, &combo), s(&f, &g).plus(&s(&f, &g2).scaled(&HPoly::constant(int(a)))));
        let fcombo = f.plus(&g2.scaled(&int(a)));
        prop_assert_eq!(s(&fcombo, &g), s(&f, &g).plus(&s(&g2, &g).scaled(&HPoly::constant(int(a)))));
    }

    #[test]
    fn truncation_is_consistent(h in algebra(), seed in any::<u64>()) {
        let (f, g) = polys(&h, seed, 3);
        let high = star_h(&h, &f.lift(), &g.lift(), 4).unwrap();
        let low = star_h(&h, &f.lift(), &g.lift(), 2).unwrap();
        prop_assert_eq!(high.truncate_hbar(2), low);
    }
}
