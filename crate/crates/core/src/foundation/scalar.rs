//! Exact rational scalars and the coefficient-ring abstraction shared by
//! every linear combination in the crate.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Scalar = BigRational;

/// Coefficient rings used for linear combinations: `Scalar` and `HPoly`.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn from_scalar(s: Scalar) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    /// Human-readable rendering used in reports.
    fn render(&self) -> String;
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn render(&self) -> String {
        format_scalar(self)
    }
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n).fold(int(1), |acc, k| acc * int(k as i64))
}

pub fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return int(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Always `p/q`, even for integers, so output never looks like a float.
pub fn format_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `p`, `p/q`, `-p/q` (whitespace around the parts allowed).
/// Decimal points and exponents are rejected so no float sneaks in.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let parse_int = |s: &str| -> Result<BigInt, ScalarParseError> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ScalarParseError::Malformed(text.to_string()));
        }
        s.parse::<BigInt>()
            .map_err(|_| ScalarParseError::Malformed(text.to_string()))
    };
    match t.split_once('/') {
        None => Ok(Scalar::from_integer(parse_int(t)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(text.to_string()));
            }
            Ok(Scalar::new(p, q))
        }
    }
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_scalar("1/3").unwrap(), frac(1, 3));
        assert_eq!(parse_scalar(" -4/6 ").unwrap(), frac(-2, 3));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert_eq!(format_scalar(&int(1)), "1/1");
        assert_eq!(format_scalar(&frac(-2, 4)), "-1/2");
    }

    #[test]
    fn rejects_floats_and_garbage() {
        for bad in ["0.5", "1e3", "", "/", "1/", "a/b", "1/0", "--1"] {
            assert!(parse_scalar(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(factorial(0), int(1));
    }

    proptest! {
        #[test]
        fn field_inverse(p in -1000i64..1000, q in 1i64..1000) {
            let a = frac(p, q);
            prop_assume!(!Zero::is_zero(&a));
            prop_assert_eq!(&a * a.recip(), int(1));
        }

        #[test]
        fn format_parse_roundtrip(p in any::<i64>(), q in 1i64..i64::MAX) {
            let a = frac(p, q);
            prop_assert_eq!(parse_scalar(&format_scalar(&a)).unwrap(), a);
        }
    }
}
