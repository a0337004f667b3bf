//! Convolution powers and series of linear endomaps of `U(g)`.

use crate::foundation::{frac, int, Coeff, HPoly, Scalar};

use super::pbw::{Envelope, PbwWord, Uea};
use super::EnvelopeError;

/// All ways of distributing the positions of `w` into `k` nonempty
/// subsequences (ordered blocks).
fn surjective_splittings(w: &PbwWord, k: usize) -> Vec<Vec<PbwWord>> {
    let n = w.len();
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut assign = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); k];
        for (pos, &b) in assign.iter().enumerate() {
            blocks[b].push(w.letters()[pos]);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks.into_iter().map(PbwWord::raw).collect());
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            if assign[pos] + 1 < k {
                assign[pos] += 1;
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

/// `f^{*k}(w)` for a map with `f(1) = 0`; iterated coproduct followed by
/// product of the images of the blocks.
pub fn convolution_power<F>(env: &Envelope, f: &F, k: usize, w: &PbwWord) -> Uea
where
    F: Fn(&PbwWord) -> Uea,
{
    if k == 0 {
        return if w.is_empty() { env.one() } else { Uea::zero() };
    }
    let mut out = Uea::zero();
    for blocks in surjective_splittings(w, k) {
        let mut acc = env.one();
        for b in &blocks {
            let image = f(b);
            if image.is_zero() {
                acc = Uea::zero();
                break;
            }
            acc = env.mul(&acc, &image);
        }
        out.add_assign(&acc);
    }
    out
}

/// `Σ_k coeffs[k] · f^{*k}(u)`; coefficients past the list are zero.
/// Requires `f(1) = 0` so that the sum is finite on every element.
pub fn convolution_series<F>(
    env: &Envelope,
    coeffs: &[Scalar],
    f: &F,
    u: &Uea,
) -> Result<Uea, EnvelopeError>
where
    F: Fn(&PbwWord) -> Uea,
{
    if !f(&PbwWord::one()).is_zero() {
        return Err(EnvelopeError::NonTerminating);
    }
    let mut out = Uea::zero();
    for (w, c) in u {
        for (k, a) in coeffs.iter().enumerate().take(w.len() + 1) {
            if Coeff::is_zero(a) {
                continue;
            }
            out.add_scaled(&convolution_power(env, f, k, w), &(a * c));
        }
    }
    Ok(out)
}

/// `(f * g)(u) = Σ f(u1) g(u2)`.
pub fn convolve<F, G>(env: &Envelope, f: &F, g: &G, u: &Uea) -> Uea
where
    F: Fn(&PbwWord) -> Uea,
    G: Fn(&PbwWord) -> Uea,
{
    let mut out = Uea::zero();
    for (w, c) in u {
        for ((l, r), d) in &env.coproduct_word(w) {
            out.add_scaled(&env.mul(&f(l), &g(r)), &(c * d));
        }
    }
    out
}

/// `id − 1ε` on a word.
pub fn augmentation_part(w: &PbwWord) -> Uea {
    if w.is_empty() {
        Uea::zero()
    } else {
        Uea::basis(w.clone())
    }
}

/// Eulerian idempotent `e1 = Σ_{k≥1} (−1)^{k+1}/k (id − 1ε)^{*k}`.
pub fn eulerian_word(env: &Envelope, w: &PbwWord) -> Uea {
    let mut out = Uea::zero();
    for k in 1..=w.len() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out.add_scaled(
            &convolution_power(env, &augmentation_part, k, w),
            &frac(sign, k as i64),
        );
    }
    out
}

pub fn eulerian(env: &Envelope, u: &Uea) -> Uea {
    u.map_linear(|w| eulerian_word(env, w))
}

/// Taylor coefficients of `e^s / (1+s)` up to `s^order`.
pub fn f_series(order: usize) -> Vec<Scalar> {
    let denom = HPoly::new(vec![int(1), int(1)], Some(order));
    let inv = denom.series_inverse(order).expect("unit constant term");
    let q = HPoly::exp_series(order).mul_ref(&inv);
    (0..=order).map(|k| q.coefficient(k)).collect()
}

/// Taylor coefficients of `(e^s − 1)/s` up to `s^order`.
pub fn g_series(order: usize) -> Vec<Scalar> {
    let q = HPoly::exp_series(order + 1).shift_down();
    (0..=order).map(|k| q.coefficient(k)).collect()
}

pub fn exp_coefficients(order: usize) -> Vec<Scalar> {
    let e = HPoly::exp_series(order);
    (0..=order).map(|k| e.coefficient(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::factorial;
    use crate::leibniz::{catalog, LieAlgebra};
    use std::sync::Arc;

    fn env(name: &str) -> Arc<Envelope> {
        Envelope::new(LieAlgebra::new(catalog(name).unwrap()).unwrap())
    }

    /// Oracle for the series: power-series coefficients from the explicit
    /// sums `Σ (−1)^j / (k−j)!` and `1/(k+1)!`.
    #[test]
    fn series_coefficients() {
        let f = f_series(5);
        for (k, c) in f.iter().enumerate() {
            let mut expect = int(0);
            for j in 0..=k {
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                expect += sign / factorial(k - j);
            }
            assert_eq!(c, &expect);
        }
        assert_eq!(f[1], int(0));
        let g = g_series(4);
        for (k, c) in g.iter().enumerate() {
            assert_eq!(c, &(int(1) / factorial(k + 1)));
        }
    }

    #[test]
    fn eulerian_examples() {
        let e = env("abelian2");
        assert!(eulerian_word(&e, &PbwWord::one()).is_zero());
        assert_eq!(eulerian_word(&e, &PbwWord::generator(1)), e.generator(1));
        // ω(ξ•η) = ξη in the abelian case, and e1 kills it.
        assert!(eulerian_word(&e, &PbwWord::raw(vec![0, 1])).is_zero());
    }

    #[test]
    fn exp_of_eulerian_is_identity() {
        for name in ["heisenberg", "sl2"] {
            let e = env(name);
            let eul = |w: &PbwWord| eulerian_word(&e, w);
            for w in e.pbw_basis(3) {
                let u = Uea::basis(w.clone());
                let back = convolution_series(&e, &exp_coefficients(3), &eul, &u).unwrap();
                assert_eq!(back, u, "{name} {w:?}");
            }
        }
    }

    #[test]
    fn series_edge_cases() {
        let e = env("heisenberg");
        let u = e.one().plus(&e.generator(0));
        let first_only = convolution_series(&e, &[int(1)], &augmentation_part, &u).unwrap();
        assert_eq!(first_only, e.one());
        let bad = |_: &PbwWord| e.one();
        assert!(matches!(
            convolution_series(&e, &[int(1)], &bad, &u),
            Err(EnvelopeError::NonTerminating)
        ));
        let eul = |w: &PbwWord| eulerian_word(&e, w);
        let on_primitive = convolution_series(&e, &f_series(3), &eul, &e.generator(0));
        assert!(on_primitive.unwrap().is_zero());
    }

    #[test]
    fn eulerian_after_omega_is_projection() {
        let e = env("sl2");
        for m in crate::symcoalg::SymBasis::new(3, 3).monomials() {
            let lhs = eulerian(&e, &e.omega_monomial(m));
            let rhs = if m.degree() == 1 {
                e.generator(m.indices()[0])
            } else {
                Uea::zero()
            };
            assert_eq!(lhs, rhs, "{m:?}");
        }
    }
}
