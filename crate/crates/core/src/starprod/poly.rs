use std::fmt;

use rand::Rng;

use crate::foundation::{factorial, int, Coeff, Combination, HPoly, Scalar, Vector};
use crate::symcoalg::{SymElt, SymMonomial};

use super::StarError;

pub type Exponents = Vec<u32>;

/// A polynomial function on `h*` in the coordinates `α_1, …, α_n`.
#[derive(Clone, PartialEq)]
pub struct PolyFun<C: Coeff = Scalar> {
    nvars: usize,
    terms: Combination<Exponents, C>,
}

impl<C: Coeff> fmt::Debug for PolyFun<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn total(e: &[u32]) -> usize {
    e.iter().map(|&d| d as usize).sum()
}

impl<C: Coeff> PolyFun<C> {
    pub fn zero(nvars: usize) -> Self {
        PolyFun {
            nvars,
            terms: Combination::zero(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        PolyFun {
            nvars,
            terms: Combination::term(vec![0; nvars], c),
        }
    }

    pub fn one(nvars: usize) -> Self {
        PolyFun::constant(nvars, C::one())
    }

    /// The coordinate function `α_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        PolyFun {
            nvars,
            terms: Combination::basis(e),
        }
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, C)>,
    ) -> Result<Self, StarError> {
        let mut out = Combination::zero();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(StarError::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            out.add_term(e, c);
        }
        Ok(PolyFun { nvars, terms: out })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &Combination<Exponents, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coefficient(&self, e: &[u32]) -> C {
        self.terms.get(&e.to_vec())
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| total(e)).max()
    }

    pub fn plus(&self, other: &Self) -> Self {
        PolyFun {
            nvars: self.nvars,
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        PolyFun {
            nvars: self.nvars,
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn scaled(&self, c: &C) -> Self {
        PolyFun {
            nvars: self.nvars,
            terms: self.terms.scaled(c),
        }
    }

    pub fn scaled_by(&self, s: &Scalar) -> Self {
        PolyFun {
            nvars: self.nvars,
            terms: self.terms.scaled_by(s),
        }
    }

    pub fn neg(&self) -> Self {
        PolyFun {
            nvars: self.nvars,
            terms: self.terms.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Combination::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, c.mul_ref(d));
            }
        }
        PolyFun {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// `∂f/∂α_j`.
    pub fn derivative(&self, j: usize) -> Self {
        let mut out = Combination::zero();
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            out.add_term(e2, c.scale(&int(e[j] as i64)));
        }
        PolyFun {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// `∂^r f/∂α^β (0) = β!·coefficient(β)`.
    pub fn derivative_at_zero(&self, beta: &[u32]) -> C {
        let weight: Scalar = beta.iter().map(|&b| factorial(b as usize)).product();
        self.coefficient(beta).scale(&weight)
    }

    pub fn degree_part(&self, d: usize) -> Self {
        PolyFun {
            nvars: self.nvars,
            terms: self.terms.filtered(|e| total(e) == d),
        }
    }

    /// Drops all monomials of total degree above `d`.
    pub fn truncate(&self, d: usize) -> Self {
        PolyFun {
            nvars: self.nvars,
            terms: self.terms.filtered(|e| total(e) <= d),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> PolyFun<D> {
        PolyFun {
            nvars: self.nvars,
            terms: self.terms.map_coeffs(f),
        }
    }

    /// `x̂ = Σ x_i α_i` for a coordinate vector `x`.
    pub fn linear(nvars: usize, x: &Vector<C>) -> Self {
        let mut out = Combination::zero();
        for (i, c) in x {
            let mut e = vec![0; nvars];
            e[*i] = 1;
            out.add_term(e, c.clone());
        }
        PolyFun { nvars, terms: out }
    }

    /// Taylor truncation of `e^{x̂}` at total degree `d`.
    pub fn exp_linear(nvars: usize, x: &Vector<C>, d: usize) -> Self {
        let lin = PolyFun::linear(nvars, x);
        let mut power = PolyFun::one(nvars);
        let mut out = PolyFun::one(nvars);
        for r in 1..=d {
            power = power.mul(&lin).truncate(d);
            out = out.plus(&power.scaled_by(&factorial(r).recip()));
        }
        out
    }

    /// Substitutes each variable `α_i` by the scalar polynomial `images[i]`.
    pub fn substitute(&self, images: &[PolyFun<Scalar>]) -> PolyFun<C> {
        let m = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = PolyFun::zero(m);
        for (e, c) in &self.terms {
            let mut acc: PolyFun<Scalar> = PolyFun::one(m);
            for (i, &d) in e.iter().enumerate() {
                for _ in 0..d {
                    acc = acc.mul(&images[i]);
                }
            }
            out = out.plus(&acc.map_coeffs(|s| c.scale(s)));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(i, &d)| {
                        if d == 1 {
                            format!("α{}", i + 1)
                        } else {
                            format!("α{}^{}", i + 1, d)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("({})", c.render())
                } else {
                    format!("({})·{}", c.render(), vars.join("·"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl PolyFun<Scalar> {
    pub fn lift(&self) -> PolyFun<HPoly> {
        self.map_coeffs(|c| HPoly::constant(c.clone()))
    }

    /// Random polynomial with small integer coefficients.
    pub fn random(rng: &mut impl Rng, nvars: usize, max_degree: u32, terms: usize) -> Self {
        let mut out = Combination::zero();
        for _ in 0..terms {
            let mut budget = rng.gen_range(0..=max_degree);
            let mut e = vec![0u32; nvars];
            while budget > 0 {
                e[rng.gen_range(0..nvars)] += 1;
                budget -= 1;
            }
            let c = rng.gen_range(-3i64..=3);
            out.add_term(e, int(c));
        }
        PolyFun { nvars, terms: out }
    }
}

impl PolyFun<HPoly> {
    /// Coefficient of `ħ^k` as a scalar polynomial.
    pub fn hbar_coefficient(&self, k: usize) -> PolyFun<Scalar> {
        self.map_coeffs(|c| c.coefficient(k))
    }

    /// Reduces all ħ-coefficients modulo `ħ^{m+1}`.
    pub fn truncate_hbar(&self, m: usize) -> Self {
        self.map_coeffs(|c| c.clone().with_truncation(Some(m)))
    }
}

fn exponents(m: &SymMonomial, n: usize) -> Exponents {
    m.exponents(n)
}

/// `Ψ(x₁•⋯•x_k) = x̂₁⋯x̂_k`.
pub fn psi<C: Coeff>(a: &SymElt<C>) -> PolyFun<C> {
    let n = a.dim();
    let mut out = Combination::zero();
    for (m, c) in a.terms() {
        out.add_term(exponents(m, n), c.clone());
    }
    PolyFun {
        nvars: n,
        terms: out,
    }
}

pub fn psi_monomial(m: &SymMonomial, n: usize) -> PolyFun {
    PolyFun {
        nvars: n,
        terms: Combination::basis(exponents(m, n)),
    }
}

/// Inverse of `Ψ` on polynomials.
pub fn psi_inverse<C: Coeff>(f: &PolyFun<C>) -> SymElt<C> {
    let terms = f
        .terms()
        .iter()
        .map(|(e, c)| (SymMonomial::from_exponents(e), c.clone()))
        .collect();
    SymElt::from_combination(f.nvars(), None, terms)
}
