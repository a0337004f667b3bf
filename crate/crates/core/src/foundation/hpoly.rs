//! Polynomials in the formal parameter ħ with rational coefficients,
//! optionally truncated at a fixed order (computing in `Q[ħ]/(ħ^{M+1})`).

use std::fmt;

use super::scalar::{format_scalar, int, Coeff, Scalar};

#[derive(Clone)]
pub struct HPoly {
    coeffs: Vec<Scalar>,
    truncation: Option<usize>,
}

impl HPoly {
    pub fn new(coeffs: Vec<Scalar>, truncation: Option<usize>) -> Self {
        let mut p = HPoly { coeffs, truncation };
        p.normalize();
        p
    }

    pub fn constant(c: Scalar) -> Self {
        HPoly::new(vec![c], None)
    }

    /// `c·ħ^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![int(0); k];
        coeffs.push(c);
        HPoly::new(coeffs, None)
    }

    pub fn hbar() -> Self {
        HPoly::monomial(int(1), 1)
    }

    pub fn with_truncation(mut self, order: Option<usize>) -> Self {
        self.truncation = order;
        self.normalize();
        self
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `ħ^k` (zero beyond the stored range).
    pub fn coefficient(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| int(0))
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn normalize(&mut self) {
        if let Some(m) = self.truncation {
            self.coeffs.truncate(m + 1);
        }
        while self.coeffs.last().is_some_and(Coeff::is_zero) {
            self.coeffs.pop();
        }
    }

    fn combined_truncation(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    /// Multiplicative inverse as a power series truncated at `order`.
    /// Returns `None` when the constant term vanishes.
    pub fn series_inverse(&self, order: usize) -> Option<HPoly> {
        let c0 = self.coefficient(0);
        if Coeff::is_zero(&c0) {
            return None;
        }
        let inv0 = c0.recip();
        let mut out: Vec<Scalar> = vec![inv0.clone()];
        for k in 1..=order {
            let mut acc = int(0);
            for j in 1..=k {
                acc += self.coefficient(j) * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Some(HPoly::new(out, Some(order)))
    }

    /// Truncated exponential series `Σ_{k≤order} s^k/k!`.
    pub fn exp_series(order: usize) -> HPoly {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut f = int(1);
        for k in 0..=order {
            if k > 0 {
                f *= int(k as i64);
            }
            coeffs.push(f.recip());
        }
        HPoly::new(coeffs, Some(order))
    }

    /// Drops the constant term and divides by the variable.
    pub fn shift_down(&self) -> HPoly {
        let coeffs = self.coeffs.iter().skip(1).cloned().collect();
        HPoly::new(coeffs, self.truncation.map(|m| m.saturating_sub(1)))
    }
}

impl PartialEq for HPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Coeff for HPoly {
    fn zero() -> Self {
        HPoly::new(Vec::new(), None)
    }
    fn one() -> Self {
        HPoly::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.coefficient(k) + other.coefficient(k))
            .collect();
        HPoly::new(
            coeffs,
            HPoly::combined_truncation(self.truncation, other.truncation),
        )
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let trunc = HPoly::combined_truncation(self.truncation, other.truncation);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return HPoly::new(Vec::new(), trunc);
        }
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(m) = trunc {
            len = len.min(m + 1);
        }
        let mut coeffs = vec![int(0); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Coeff::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        HPoly::new(coeffs, trunc)
    }
    fn neg_ref(&self) -> Self {
        HPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.truncation)
    }
    fn scale(&self, s: &Scalar) -> Self {
        HPoly::new(self.coeffs.iter().map(|c| c * s).collect(), self.truncation)
    }
    fn from_scalar(s: Scalar) -> Self {
        HPoly::constant(s)
    }
    /// `c0 + c1·ħ + c2·ħ^2`, every coefficient up to the leading one
    /// printed as `p/q`.
    fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0/1".to_string();
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| match k {
                0 => format_scalar(c),
                1 => format!("{}·ħ", format_scalar(c)),
                _ => format!("{}·ħ^{}", format_scalar(c), k),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Multiplies two ħ-polynomials (the `hpoly_mul` operation).
pub fn hpoly_mul(p: &HPoly, q: &HPoly) -> HPoly {
    p.mul_ref(q)
}
