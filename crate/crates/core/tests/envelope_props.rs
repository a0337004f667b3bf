use leibrack::envelope::{PbwWord, SymAction, Uea};
use leibrack::foundation::frac;
use leibrack::leibniz::{catalog, squares_ideal};
use leibrack::symcoalg::SymMonomial;
use proptest::prelude::*;

fn action(name: &str) -> std::sync::Arc<SymAction> {
    let h = catalog(name).unwrap();
    SymAction::new(&h, &squares_ideal(&h)).unwrap()
}

fn word(letters: &[usize]) -> Uea {
    Uea::basis(PbwWord::raw(letters.to_vec()))
}

#[test]
fn sl2_commutators_straighten() {
    let a = action("sl2");
    let env = a.envelope();
    // [E,F] = H with H, E, F the first, second and third generators.
    let ef = env.mul(&env.generator(1), &env.generator(2));
    let fe = env.mul(&env.generator(2), &env.generator(1));
    assert_eq!(ef.minus(&fe), env.generator(0));
}

#[test]
fn omega_of_cube_is_average_over_orderings() {
    let a = action("heisenberg");
    let env = a.envelope();
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut sum = Uea::zero();
    for p in perms {
        sum = sum.plus(&env.straighten(&p));
    }
    let expected = sum.scaled_by(&frac(1, 6));
    assert_eq!(
        env.omega_monomial(&SymMonomial::new(vec![0, 1, 2])),
        expected
    );
}

fn letters(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(x in letters(3), y in letters(3), z in letters(3)) {
        let a = action("sl2");
        let env = a.envelope();
        let (u, v, w) = (env.straighten(&x), env.straighten(&y), env.straighten(&z));
        prop_assert_eq!(env.mul(&env.mul(&u, &v), &w), env.mul(&u, &env.mul(&v, &w)));
    }

    #[test]
    fn straightening_respects_concatenation(x in letters(3), y in letters(3)) {
        let a = action("heisenberg");
        let env = a.envelope();
        let mut xy = x.clone();
        xy.extend(&y);
        prop_assert_eq!(env.straighten(&xy), env.mul(&env.straighten(&x), &env.straighten(&y)));
    }

    #[test]
    fn action_is_a_module_structure(x in letters(3), y in letters(3), m in prop::collection::vec(0usize..3, 0..3)) {
        let a = action("sl2");
        let env = a.envelope();
        let (u, v) = (env.straighten(&x), env.straighten(&y));
        let s = leibrack::envelope::SymComb::basis(SymMonomial::new(m));
        prop_assert_eq!(a.act(&env.mul(&u, &v), &s), a.act(&u, &a.act(&v, &s)));
        prop_assert_eq!(a.act(&word(&[]), &s), s);
    }
}
