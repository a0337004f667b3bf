//! JSON input formats: algebras, finite racks, polynomials and problem files.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::foundation::{format_scalar, parse_scalar, HPoly, Scalar, ScalarParseError};
use crate::leibniz::{
    catalog, IdealChoice, LeibnizAlgebra, LeibnizError, StructureConstant, Subspace,
};
use crate::rack::{FiniteRack, RackError};
use crate::starprod::PolyFun;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("at {pointer}: {source}")]
    Scalar {
        pointer: String,
        source: ScalarParseError,
    },
    #[error("at {pointer}: {source}")]
    Leibniz {
        pointer: String,
        source: LeibnizError,
    },
    #[error("at {pointer}: {source}")]
    Rack { pointer: String, source: RackError },
}

impl FormatError {
    /// JSON pointer of the offending value, when known.
    pub fn pointer(&self) -> Option<&str> {
        match self {
            FormatError::Json { .. } => None,
            FormatError::Schema { pointer, .. }
            | FormatError::Scalar { pointer, .. }
            | FormatError::Leibniz { pointer, .. }
            | FormatError::Rack { pointer, .. } => Some(pointer),
        }
    }
}

fn schema(pointer: &str, message: impl Into<String>) -> FormatError {
    FormatError::Schema {
        pointer: if pointer.is_empty() {
            "/".into()
        } else {
            pointer.into()
        },
        message: message.into(),
    }
}

fn child(pointer: &str, key: impl std::fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{pointer}/{key}")
}

pub fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn as_object<'a>(v: &'a Value, p: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| schema(p, "expected an object"))
}

fn as_array<'a>(v: &'a Value, p: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| schema(p, "expected an array"))
}

fn as_usize(v: &Value, p: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| schema(p, "expected a non-negative integer"))
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str, p: &str) -> Result<&'a Value, FormatError> {
    obj.get(key)
        .ok_or_else(|| schema(p, format!("missing field {key:?}")))
}

/// A rational given as a `"p/q"` string; JSON numbers are rejected.
pub fn scalar_from_value(v: &Value, p: &str) -> Result<Scalar, FormatError> {
    let s = v
        .as_str()
        .ok_or_else(|| schema(p, "rationals must be strings like \"p/q\""))?;
    parse_scalar(s).map_err(|source| FormatError::Scalar {
        pointer: p.to_string(),
        source,
    })
}

fn names_from_value(obj: &Map<String, Value>, p: &str) -> Result<Option<Vec<String>>, FormatError> {
    match obj.get("names") {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let np = child(p, "names");
            as_array(v, &np)?
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    n.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| schema(&child(&np, i), "expected a string"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some)
        }
    }
}

/// `{"dim": n, "names": [...], "c": [[i, j, k, "p/q"], ...]}` with 1-based
/// indices; the Leibniz identity is not checked.
pub fn algebra_from_value_unchecked(v: &Value, p: &str) -> Result<LeibnizAlgebra, FormatError> {
    let obj = as_object(v, p)?;
    let dim = as_usize(required(obj, "dim", p)?, &child(p, "dim"))?;
    let names = names_from_value(obj, p)?;
    let cp = child(p, "c");
    let entries = match obj.get("c") {
        None => Vec::new(),
        Some(c) => as_array(c, &cp)?.clone(),
    };
    let mut constants = Vec::with_capacity(entries.len());
    for (n, e) in entries.iter().enumerate() {
        let ep = child(&cp, n);
        let parts = as_array(e, &ep)?;
        if parts.len() != 4 {
            return Err(schema(&ep, "expected [i, j, k, \"p/q\"]"));
        }
        let idx = |m: usize| -> Result<usize, FormatError> {
            let ip = child(&ep, m);
            let i = as_usize(&parts[m], &ip)?;
            if i == 0 || i > dim {
                return Err(FormatError::Leibniz {
                    pointer: ip,
                    source: LeibnizError::IndexOutOfRange { index: i, dim },
                });
            }
            Ok(i)
        };
        let (i, j, k) = (idx(0)?, idx(1)?, idx(2)?);
        let value = scalar_from_value(&parts[3], &child(&ep, 3))?;
        constants.push(StructureConstant { i, j, k, value });
    }
    LeibnizAlgebra::unchecked(dim, names, &constants).map_err(|source| FormatError::Leibniz {
        pointer: if p.is_empty() { "/".into() } else { p.into() },
        source,
    })
}

/// Like [`algebra_from_value_unchecked`], and validates the Leibniz identity.
/// A string value names a catalog entry.
pub fn algebra_from_value(v: &Value, p: &str) -> Result<LeibnizAlgebra, FormatError> {
    let pointer = if p.is_empty() {
        "/".to_string()
    } else {
        p.to_string()
    };
    if let Some(name) = v.as_str() {
        return catalog(name).map_err(|source| FormatError::Leibniz { pointer, source });
    }
    let alg = algebra_from_value_unchecked(v, p)?;
    let violations = alg.leibniz_violations();
    if violations.is_empty() {
        Ok(alg)
    } else {
        Err(FormatError::Leibniz {
            pointer,
            source: LeibnizError::IdentityViolation(violations),
        })
    }
}

pub fn parse_algebra(text: &str) -> Result<LeibnizAlgebra, FormatError> {
    algebra_from_value(&parse_json(text)?, "")
}

pub fn parse_algebra_unchecked(text: &str) -> Result<LeibnizAlgebra, FormatError> {
    algebra_from_value_unchecked(&parse_json(text)?, "")
}

/// The algebra format for `h`, constants sorted by `(i, j, k)`.
pub fn algebra_to_value(h: &LeibnizAlgebra) -> Value {
    let c: Vec<Value> = h
        .constants()
        .iter()
        .map(|s| json!([s.i, s.j, s.k, format_scalar(&s.value)]))
        .collect();
    json!({"dim": h.dim(), "names": h.names(), "c": c})
}

/// `{"size": m, "unit": e, "op": [[...], ...]}` with 0-based elements.
pub fn rack_from_value(v: &Value, p: &str) -> Result<FiniteRack, FormatError> {
    let obj = as_object(v, p)?;
    let size = as_usize(required(obj, "size", p)?, &child(p, "size"))?;
    let unit = as_usize(required(obj, "unit", p)?, &child(p, "unit"))?;
    let op_p = child(p, "op");
    let rows = as_array(required(obj, "op", p)?, &op_p)?;
    let mut op = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let rp = child(&op_p, i);
        let cells = as_array(row, &rp)?;
        op.push(
            cells
                .iter()
                .enumerate()
                .map(|(j, c)| as_usize(c, &child(&rp, j)))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    FiniteRack::new(size, unit, op).map_err(|source| FormatError::Rack {
        pointer: if p.is_empty() { "/".into() } else { p.into() },
        source,
    })
}

pub fn parse_rack(text: &str) -> Result<FiniteRack, FormatError> {
    rack_from_value(&parse_json(text)?, "")
}

pub fn rack_to_value(x: &FiniteRack) -> Value {
    json!({"size": x.size(), "unit": x.unit(), "op": x.table()})
}

/// `{"terms": [[coeff, [d1, ..., dn]], ...]}` where `coeff` is a `"p/q"`
/// string or a list of them giving the coefficients of `ħ^0, ħ^1, …`.
/// All exponent vectors must have the same length (`nvars` when given).
pub fn poly_from_value(
    v: &Value,
    p: &str,
    nvars: Option<usize>,
) -> Result<PolyFun<HPoly>, FormatError> {
    let obj = as_object(v, p)?;
    let tp = child(p, "terms");
    let terms = as_array(required(obj, "terms", p)?, &tp)?;
    let mut n = nvars;
    let mut parsed = Vec::with_capacity(terms.len());
    for (t, term) in terms.iter().enumerate() {
        let ep = child(&tp, t);
        let parts = as_array(term, &ep)?;
        if parts.len() != 2 {
            return Err(schema(&ep, "expected [coefficient, [exponents]]"));
        }
        let cp = child(&ep, 0);
        let coeff = match &parts[0] {
            Value::Array(list) => {
                let coeffs = list
                    .iter()
                    .enumerate()
                    .map(|(k, c)| scalar_from_value(c, &child(&cp, k)))
                    .collect::<Result<Vec<_>, _>>()?;
                HPoly::new(coeffs, None)
            }
            other => HPoly::constant(scalar_from_value(other, &cp)?),
        };
        let xp = child(&ep, 1);
        let exps = as_array(&parts[1], &xp)?
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let kp = child(&xp, k);
                as_usize(d, &kp)
                    .and_then(|d| u32::try_from(d).map_err(|_| schema(&kp, "exponent too large")))
            })
            .collect::<Result<Vec<u32>, _>>()?;
        match n {
            Some(expected) if expected != exps.len() => {
                return Err(schema(
                    &xp,
                    format!("expected {expected} exponents, found {}", exps.len()),
                ))
            }
            _ => n = Some(exps.len()),
        }
        parsed.push((exps, coeff));
    }
    let n = n.ok_or_else(|| schema(&tp, "cannot infer the number of variables from no terms"))?;
    PolyFun::from_terms(n, parsed).map_err(|e| schema(&tp, e.to_string()))
}

pub fn parse_poly(text: &str, nvars: Option<usize>) -> Result<PolyFun<HPoly>, FormatError> {
    poly_from_value(&parse_json(text)?, "", nvars)
}

/// Terms as `[[rendered coefficient, [exponents]], ...]`.
pub fn poly_to_value(f: &PolyFun<HPoly>) -> Value {
    use crate::foundation::Coeff;
    Value::Array(
        f.terms()
            .iter()
            .map(|(e, c)| json!([c.render(), e]))
            .collect(),
    )
}

/// The input schema `{"terms": [[coeff, [exponents]], ...]}`; coefficients
/// with ħ-dependence are written as arrays of ħ coefficients.
pub fn poly_to_document(f: &PolyFun<HPoly>) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|(e, c)| {
            let coeffs = c.coefficients();
            let coeff = if coeffs.len() <= 1 {
                json!(format_scalar(&c.coefficient(0)))
            } else {
                Value::Array(coeffs.iter().map(|x| json!(format_scalar(x))).collect())
            };
            json!([coeff, e])
        })
        .collect();
    json!({ "terms": terms })
}

/// A problem file: any subset of an algebra, an ideal choice, a rack and a
/// polynomial pair. A bare algebra, rack or polynomial document is also
/// accepted.
#[derive(Clone, Debug, Default)]
pub struct Problem {
    /// Unvalidated, so that `validate` can report violations.
    pub algebra: Option<LeibnizAlgebra>,
    pub ideal: Option<IdealChoice>,
    pub rack: Option<FiniteRack>,
    pub f: Option<PolyFun<HPoly>>,
    pub g: Option<PolyFun<HPoly>>,
}

impl Problem {
    /// Fields of `other` override those of `self`.
    pub fn merge(self, other: Problem) -> Problem {
        Problem {
            algebra: other.algebra.or(self.algebra),
            ideal: other.ideal.or(self.ideal),
            rack: other.rack.or(self.rack),
            f: other.f.or(self.f),
            g: other.g.or(self.g),
        }
    }
}

fn ideal_from_value(v: &Value, p: &str, dim: Option<usize>) -> Result<IdealChoice, FormatError> {
    match v {
        Value::String(s) => match s.as_str() {
            "squares" => Ok(IdealChoice::Squares),
            "left-center" => Ok(IdealChoice::LeftCenter),
            _ => Err(schema(
                p,
                "expected \"squares\", \"left-center\" or a list of vectors",
            )),
        },
        Value::Array(rows) => {
            let dim = dim.ok_or_else(|| schema(p, "a custom ideal needs an algebra"))?;
            let mut vectors = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let rp = child(p, i);
                let entries = as_array(row, &rp)?;
                if entries.len() != dim {
                    return Err(schema(&rp, format!("expected {dim} coordinates")));
                }
                vectors.push(
                    entries
                        .iter()
                        .enumerate()
                        .map(|(j, c)| scalar_from_value(c, &child(&rp, j)))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            Ok(IdealChoice::Custom(Subspace::span(&vectors, dim)))
        }
        _ => Err(schema(p, "expected a string or an array")),
    }
}

pub fn problem_from_value(v: &Value) -> Result<Problem, FormatError> {
    let obj = as_object(v, "")?;
    if obj.contains_key("dim") {
        return Ok(Problem {
            algebra: Some(algebra_from_value_unchecked(v, "")?),
            ..Problem::default()
        });
    }
    if obj.contains_key("op") {
        return Ok(Problem {
            rack: Some(rack_from_value(v, "")?),
            ..Problem::default()
        });
    }
    if obj.contains_key("terms") {
        return Ok(Problem {
            f: Some(poly_from_value(v, "", None)?),
            ..Problem::default()
        });
    }
    for key in obj.keys() {
        if !["algebra", "ideal", "rack", "f", "g"].contains(&key.as_str()) {
            return Err(schema(&child("", key), "unknown field"));
        }
    }
    let algebra = match obj.get("algebra") {
        None => None,
        Some(Value::String(name)) => {
            Some(catalog(name).map_err(|source| FormatError::Leibniz {
                pointer: "/algebra".into(),
                source,
            })?)
        }
        Some(a) => Some(algebra_from_value_unchecked(a, "/algebra")?),
    };
    let dim = algebra.as_ref().map(LeibnizAlgebra::dim);
    let ideal = obj
        .get("ideal")
        .map(|i| ideal_from_value(i, "/ideal", dim))
        .transpose()?;
    let rack = obj
        .get("rack")
        .map(|r| rack_from_value(r, "/rack"))
        .transpose()?;
    let f = obj
        .get("f")
        .map(|f| poly_from_value(f, "/f", dim))
        .transpose()?;
    let g = obj
        .get("g")
        .map(|g| poly_from_value(g, "/g", dim))
        .transpose()?;
    Ok(Problem {
        algebra,
        ideal,
        rack,
        f,
        g,
    })
}

pub fn parse_problem(text: &str) -> Result<Problem, FormatError> {
    problem_from_value(&parse_json(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::{frac, int};

    #[test]
    fn sq2_round_trip() {
        let h = catalog("sq2").unwrap();
        let text = algebra_to_value(&h).to_string();
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back.constants(), h.constants());
        assert_eq!(back.names(), h.names());
    }

    #[test]
    fn invalid_algebra_is_reported() {
        let text = r#"{"dim": 2, "c": [[1, 2, 1, "1"]]}"#;
        assert!(parse_algebra_unchecked(text).is_ok());
        match parse_algebra(text) {
            Err(FormatError::Leibniz {
                source: LeibnizError::IdentityViolation(v),
                ..
            }) => assert!(!v.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pointers_locate_errors() {
        let err = parse_algebra(r#"{"dim": 2, "c": [[1, 1, 2, 0.5]]}"#).unwrap_err();
        assert_eq!(err.pointer(), Some("/c/0/3"));
        let err = parse_algebra(r#"{"dim": 2, "c": [[1, 3, 2, "1"]]}"#).unwrap_err();
        assert_eq!(err.pointer(), Some("/c/0/1"));
        let err = parse_algebra(r#"{"c": []}"#).unwrap_err();
        assert_eq!(err.pointer(), Some("/"));
        let err = parse_algebra(r#"{"dim": 2, "c": [[1, 1, 2, "1/0"]]}"#).unwrap_err();
        assert!(matches!(err, FormatError::Scalar { .. }));
        assert!(matches!(parse_algebra("{"), Err(FormatError::Json { .. })));
    }

    #[test]
    fn rationals_are_exact() {
        let h = parse_algebra(r#"{"dim": 2, "c": [[1, 1, 2, "1/3"]]}"#).unwrap();
        assert_eq!(h.structure_constant(0, 0, 1), frac(1, 3));
    }

    #[test]
    fn racks() {
        let r = parse_rack(r#"{"size": 2, "unit": 0, "op": [[0, 1], [0, 1]]}"#).unwrap();
        assert_eq!(r.size(), 2);
        let bad = parse_rack(r#"{"size": 2, "unit": 0, "op": [[0, 1], [1, 1]]}"#).unwrap_err();
        assert!(matches!(
            bad,
            FormatError::Rack {
                source: RackError::InvalidRack(_),
                ..
            }
        ));
        let d3 = FiniteRack::dihedral_with_unit(3);
        let back = parse_rack(&rack_to_value(&d3).to_string()).unwrap();
        assert_eq!(back.table(), d3.table());
    }

    #[test]
    fn polynomials() {
        let f = parse_poly(
            r#"{"terms": [["1", [1, 0]], [["0", "2"], [0, 2]]]}"#,
            Some(2),
        )
        .unwrap();
        assert_eq!(f.coefficient(&[1, 0]), HPoly::constant(int(1)));
        assert_eq!(f.coefficient(&[0, 2]).coefficient(1), int(2));
        assert!(parse_poly(r#"{"terms": [["1", [1]]]}"#, Some(2)).is_err());
        assert!(parse_poly(r#"{"terms": []}"#, None).is_err());
        assert_eq!(poly_to_value(&f).as_array().unwrap().len(), 2);
    }

    #[test]
    fn problem_files() {
        let p = parse_problem(
            r#"{"algebra": "sq2", "ideal": "left-center",
                "f": {"terms": [["1", [1, 0]]]}, "g": {"terms": [["1", [1, 0]]]}}"#,
        )
        .unwrap();
        assert_eq!(p.algebra.unwrap().dim(), 2);
        assert!(matches!(p.ideal, Some(IdealChoice::LeftCenter)));
        assert!(p.f.is_some() && p.g.is_some());
        let err = parse_problem(r#"{"algebra": "sq2", "f": {"terms": [["1", [1]]]}}"#).unwrap_err();
        assert_eq!(err.pointer(), Some("/f/terms/0/1"));
        assert!(parse_problem(r#"{"bogus": 1}"#).is_err());
        let custom = parse_problem(r#"{"algebra": "sq2", "ideal": [["0", "1"]]}"#).unwrap();
        assert!(matches!(custom.ideal, Some(IdealChoice::Custom(_))));
    }
}
