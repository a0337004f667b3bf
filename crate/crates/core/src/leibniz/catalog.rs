//! Named small Leibniz algebras, each validated when loaded.

use crate::foundation::{int, ExactMatrix, Scalar, Vector};

use super::algebra::{LeibnizAlgebra, StructureConstant};
use super::ideals::{left_center, quotient_lie, Quotient};
use super::morphism::LeibnizMorphism;
use super::LeibnizError;

fn sc(i: usize, j: usize, k: usize, v: i64) -> StructureConstant {
    StructureConstant {
        i,
        j,
        k,
        value: int(v),
    }
}

fn names(list: &[&str]) -> Option<Vec<String>> {
    Some(list.iter().map(|s| s.to_string()).collect())
}

/// Fixed catalog entries (the `abelianN` family accepts any `N ≥ 1`).
pub const CATALOG_NAMES: &[&str] = &[
    "abelian1",
    "abelian2",
    "abelian3",
    "sq2",
    "leib2",
    "heisenberg",
    "sl2",
    "leib3",
    "hemi-sq2",
    "hemi-leib2",
    "hemi-leib3",
];

pub fn catalog(name: &str) -> Result<LeibnizAlgebra, LeibnizError> {
    let unknown = || LeibnizError::UnknownName(name.to_string());
    if let Some(rest) = name.strip_prefix("abelian") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        return LeibnizAlgebra::new(n, None, &[]);
    }
    if let Some(base) = name.strip_prefix("hemi-") {
        return hemi(&catalog(base)?);
    }
    match name {
        "sq2" => LeibnizAlgebra::new(2, None, &[sc(1, 1, 2, 1)]),
        "leib2" => LeibnizAlgebra::new(2, None, &[sc(1, 2, 2, 1)]),
        "heisenberg" => LeibnizAlgebra::new(
            3,
            names(&["X", "Y", "Z"]),
            &[sc(1, 2, 3, 1), sc(2, 1, 3, -1)],
        ),
        "sl2" => LeibnizAlgebra::new(
            3,
            names(&["H", "E", "F"]),
            &[
                sc(1, 2, 2, 2),
                sc(2, 1, 2, -2),
                sc(1, 3, 3, -2),
                sc(3, 1, 3, 2),
                sc(2, 3, 1, 1),
                sc(3, 2, 1, -1),
            ],
        ),
        // [e1,e2] = e2, [e1,e1] = e3: neither nilpotent nor Lie.
        "leib3" => LeibnizAlgebra::new(3, None, &[sc(1, 2, 2, 1), sc(1, 1, 3, 1)]),
        _ => Err(unknown()),
    }
}

/// Structure constants that violate the left Leibniz identity:
/// `[e1,e2] = e1` in dimension 2.
pub fn planted_invalid() -> (usize, Vec<StructureConstant>) {
    (2, vec![sc(1, 2, 1, 1)])
}

/// The hemi-semidirect product `h ⊕ g` with `g = h/z(h)` and bracket
/// `[(x,ζ),(y,ζ')] = (ζ.y, [ζ,ζ'])`. The first `dim h` coordinates are `h`.
pub fn hemi(h: &LeibnizAlgebra) -> Result<LeibnizAlgebra, LeibnizError> {
    hemi_over(&quotient_lie(h, &left_center(h))?)
}

/// The hemi-semidirect product `h ⊕ g` for an arbitrary Lie quotient `g = h/z`.
pub fn hemi_over(q: &Quotient) -> Result<LeibnizAlgebra, LeibnizError> {
    let h = &q.source;
    let n = h.dim();
    let m = q.g_dim();
    let mut table = vec![vec![Vector::zero(); n + m]; n + m];
    for a in 0..m {
        for j in 0..n {
            table[n + a][j] = q.act_basis(a, &Vector::basis(j));
        }
        for b in 0..m {
            table[n + a][n + b] = q
                .lie
                .basis_bracket(a, b)
                .map_linear(|&c| Vector::basis(n + c));
        }
    }
    let mut labels: Vec<String> = h.names().to_vec();
    labels.extend(q.lie.names().iter().map(|s| format!("p_{s}")));
    let alg = LeibnizAlgebra::from_table(n + m, labels, table);
    let violations = alg.leibniz_violations();
    if violations.is_empty() {
        Ok(alg)
    } else {
        Err(LeibnizError::IdentityViolation(violations))
    }
}

fn matrix(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_dense(
        &rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect::<Vec<Scalar>>())
            .collect::<Vec<_>>(),
    )
}

/// Named morphisms between catalog algebras, validated on construction.
pub fn catalog_morphisms() -> Vec<(&'static str, LeibnizMorphism)> {
    let get = |n: &str| catalog(n).expect("catalog entry");
    vec![
        (
            "sq2->leib3",
            LeibnizMorphism::new(
                get("sq2"),
                get("leib3"),
                matrix(&[&[1, 0], &[0, 0], &[0, 1]]),
            )
            .expect("valid morphism"),
        ),
        (
            "leib3->sq2",
            LeibnizMorphism::new(get("leib3"), get("sq2"), matrix(&[&[1, 0, 0], &[0, 0, 1]]))
                .expect("valid morphism"),
        ),
        (
            "heisenberg->abelian2",
            LeibnizMorphism::new(
                get("heisenberg"),
                get("abelian2"),
                matrix(&[&[1, 0, 0], &[0, 1, 0]]),
            )
            .expect("valid morphism"),
        ),
    ]
}
