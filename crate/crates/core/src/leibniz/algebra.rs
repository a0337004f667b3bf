use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use num_traits::Zero;

use crate::foundation::{format_scalar, int, ExactMatrix, Scalar, Vector};

use super::LeibnizError;

/// A single structure constant `c^k_{ij} = e^k([e_i, e_j])`, 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Scalar,
}

/// One failing basis triple of the left Leibniz identity, 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleViolation {
    pub triple: (usize, usize, usize),
    pub lhs: Vector,
    pub rhs: Vector,
}

impl fmt::Display for TripleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{}): lhs {} rhs {}",
            self.triple.0,
            self.triple.1,
            self.triple.2,
            render_vector(&self.lhs),
            render_vector(&self.rhs)
        )
    }
}

pub fn render_vector(v: &Vector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| format!("{}*e{}", format_scalar(c), i + 1))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A finite-dimensional left Leibniz algebra, stored as a table of basis
/// brackets (0-based internally).
#[derive(Clone, PartialEq)]
pub struct LeibnizAlgebra {
    dim: usize,
    names: Vec<String>,
    table: Vec<Vec<Vector>>,
}

impl fmt::Debug for LeibnizAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LeibnizAlgebra")
            .field("dim", &self.dim)
            .field("names", &self.names)
            .field("constants", &self.constants())
            .finish()
    }
}

impl LeibnizAlgebra {
    /// Builds and validates an algebra from 1-based structure constants.
    /// Repeated entries for the same `(i, j, k)` are summed.
    pub fn new(
        dim: usize,
        names: Option<Vec<String>>,
        constants: &[StructureConstant],
    ) -> Result<Self, LeibnizError> {
        let alg = LeibnizAlgebra::unchecked(dim, names, constants)?;
        let violations = alg.leibniz_violations();
        if violations.is_empty() {
            Ok(alg)
        } else {
            Err(LeibnizError::IdentityViolation(violations))
        }
    }

    /// Builds the table without checking the Leibniz identity.
    pub fn unchecked(
        dim: usize,
        names: Option<Vec<String>>,
        constants: &[StructureConstant],
    ) -> Result<Self, LeibnizError> {
        if dim == 0 {
            return Err(LeibnizError::ZeroDimension);
        }
        let names = match names {
            Some(n) if n.len() != dim => {
                return Err(LeibnizError::NameCount {
                    dim,
                    names: n.len(),
                })
            }
            Some(n) => n,
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let mut table = vec![vec![Vector::zero(); dim]; dim];
        for c in constants {
            for idx in [c.i, c.j, c.k] {
                if idx == 0 || idx > dim {
                    return Err(LeibnizError::IndexOutOfRange { index: idx, dim });
                }
            }
            table[c.i - 1][c.j - 1].add_term(c.k - 1, c.value.clone());
        }
        Ok(LeibnizAlgebra { dim, names, table })
    }

    pub(crate) fn from_table(dim: usize, names: Vec<String>, table: Vec<Vec<Vector>>) -> Self {
        LeibnizAlgebra { dim, names, table }
    }

    pub fn abelian(dim: usize) -> Self {
        LeibnizAlgebra::unchecked(dim, None, &[]).expect("positive dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `[e_i, e_j]`, 0-based.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in x {
            for (j, b) in y {
                out.add_scaled(&self.table[*i][*j], &(a * b));
            }
        }
        out
    }

    /// `ad_x = [x, -]` applied to `y` where `x = e_i`.
    pub fn ad_basis(&self, i: usize, y: &Vector) -> Vector {
        y.map_linear(|&j| self.table[i][j].clone())
    }

    /// 1-based constants in `(i, j, k)` order.
    pub fn constants(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, v) in &self.table[i][j] {
                    out.push(StructureConstant {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value: v.clone(),
                    });
                }
            }
        }
        out
    }

    /// Constants as a map keyed by 0-based `(i, j, k)`.
    pub fn constant_map(&self) -> BTreeMap<(usize, usize, usize), Scalar> {
        self.constants()
            .into_iter()
            .map(|c| ((c.i - 1, c.j - 1, c.k - 1), c.value))
            .collect()
    }

    /// Every basis triple violating `[x,[y,z]] = [[x,y],z] + [y,[x,z]]`.
    pub fn leibniz_violations(&self) -> Vec<TripleViolation> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ei, ej, ek) = (basis(i), basis(j), basis(k));
                    let lhs = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let rhs = self
                        .bracket(&self.bracket(&ei, &ej), &ek)
                        .plus(&self.bracket(&ej, &self.bracket(&ei, &ek)));
                    if lhs != rhs {
                        out.push(TripleViolation {
                            triple: (i + 1, j + 1, k + 1),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_lie(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.table[i][j] == self.table[j][i].neg()))
            && self.jacobi_violations().is_empty()
    }

    fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ei, ej, ek) = (basis(i), basis(j), basis(k));
                    let mut s = self.bracket(&ei, &self.bracket(&ej, &ek));
                    s.add_assign(&self.bracket(&ej, &self.bracket(&ek, &ei)));
                    s.add_assign(&self.bracket(&ek, &self.bracket(&ei, &ej)));
                    if !s.is_zero() {
                        out.push((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_{e_i}` as dense rows, `m[k][j] = c^k_{ij}`.
    pub fn ad_matrix(&self, i: usize) -> Vec<Vec<Scalar>> {
        let mut m = vec![vec![int(0); self.dim]; self.dim];
        for j in 0..self.dim {
            for (k, v) in &self.table[i][j] {
                m[*k][j] = v.clone();
            }
        }
        m
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i][j].get(&k)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(|v| v.is_zero()))
    }

    /// The same algebra in the basis `e'_a = Σ_j p[j][a] e_j`.
    pub fn change_basis(&self, p: &ExactMatrix) -> Result<Self, LeibnizError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(LeibnizError::DimensionMismatch {
                expected: n,
                found: p.rows(),
            });
        }
        if p.rank() != n {
            return Err(LeibnizError::DimensionMismatch {
                expected: n,
                found: p.rank(),
            });
        }
        let col = |a: usize| Vector::from_dense(&p.column(a));
        let mut table = vec![vec![Vector::zero(); n]; n];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                let image = self.bracket(&col(a), &col(b));
                let coords = p
                    .solve(&image.to_dense(n))
                    .expect("invertible change of basis");
                *entry = Vector::from_dense(&coords);
            }
        }
        Ok(LeibnizAlgebra {
            dim: n,
            names: self.names.clone(),
            table,
        })
    }
}

pub fn basis(i: usize) -> Vector {
    Vector::basis(i)
}

/// A Leibniz algebra that is additionally antisymmetric and satisfies Jacobi.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra(LeibnizAlgebra);

impl LieAlgebra {
    pub fn new(alg: LeibnizAlgebra) -> Result<Self, LeibnizError> {
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                if alg.table[i][j] != alg.table[j][i].neg() {
                    return Err(LeibnizError::NotAntisymmetric {
                        pair: (i + 1, j + 1),
                    });
                }
            }
        }
        let bad = alg.jacobi_violations();
        if let Some(&t) = bad.first() {
            return Err(LeibnizError::JacobiViolation { triple: t });
        }
        Ok(LieAlgebra(alg))
    }

    pub fn as_leibniz(&self) -> &LeibnizAlgebra {
        &self.0
    }

    pub fn into_leibniz(self) -> LeibnizAlgebra {
        self.0
    }
}

impl Deref for LieAlgebra {
    type Target = LeibnizAlgebra;
    fn deref(&self) -> &LeibnizAlgebra {
        &self.0
    }
}

pub(crate) fn dense(v: &Vector, dim: usize) -> Vec<Scalar> {
    v.to_dense(dim)
}

pub(crate) fn sparse(v: &[Scalar]) -> Vector {
    Vector::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i, a.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(i: usize, j: usize, k: usize, v: i64) -> StructureConstant {
        StructureConstant {
            i,
            j,
            k,
            value: int(v),
        }
    }

    /// Independent oracle: evaluates the identity directly from the
    /// constant map instead of the bracket table.
    fn oracle_violations(dim: usize, c: &BTreeMap<(usize, usize, usize), Scalar>) -> usize {
        let get = |i, j, k| c.get(&(i, j, k)).cloned().unwrap_or_else(|| int(0));
        let mut bad = 0;
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let ok = (0..dim).all(|m| {
                        let mut lhs = int(0);
                        let mut rhs = int(0);
                        for l in 0..dim {
                            lhs += get(y, z, l) * get(x, l, m);
                            rhs += get(x, y, l) * get(l, z, m);
                            rhs += get(x, z, l) * get(y, l, m);
                        }
                        lhs == rhs
                    });
                    if !ok {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    #[test]
    fn sq2_is_leibniz() {
        let a = LeibnizAlgebra::new(2, None, &[sc(1, 1, 2, 1)]).unwrap();
        assert_eq!(oracle_violations(2, &a.constant_map()), 0);
        assert!(!a.is_lie());
    }

    #[test]
    fn planted_invalid_fails_at_expected_triple() {
        let err = LeibnizAlgebra::new(2, None, &[sc(1, 2, 1, 1)]).unwrap_err();
        let LeibnizError::IdentityViolation(v) = err else {
            panic!("wrong error");
        };
        let raw = LeibnizAlgebra::unchecked(2, None, &[sc(1, 2, 1, 1)]).unwrap();
        assert_eq!(v.len(), oracle_violations(2, &raw.constant_map()));
        let first = v.iter().find(|t| t.triple == (1, 2, 2)).unwrap();
        assert!(first.lhs.is_zero());
        assert_eq!(first.rhs, basis(0));
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            LeibnizAlgebra::new(2, None, &[sc(1, 3, 1, 1)]),
            Err(LeibnizError::IndexOutOfRange { index: 3, dim: 2 })
        ));
    }

    #[test]
    fn lie_validation() {
        let h = LeibnizAlgebra::new(3, None, &[sc(1, 2, 3, 1), sc(2, 1, 3, -1)]).unwrap();
        assert!(LieAlgebra::new(h).is_ok());
        let half = LeibnizAlgebra::unchecked(3, None, &[sc(1, 2, 3, 1)]).unwrap();
        assert!(LieAlgebra::new(half).is_err());
    }
}
