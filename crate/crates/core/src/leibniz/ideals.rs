use num_traits::Zero;

use crate::foundation::linalg::span_rref;
use crate::foundation::{int, ExactMatrix, Rref, Scalar, Vector};

use super::algebra::{dense, sparse, LeibnizAlgebra, LieAlgebra};
use super::LeibnizError;

/// A linear subspace of `K^n`, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    rref: Rref,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rref.pivots == other.rref.pivots
            && self.rref.rows == other.rref.rows
    }
}

impl Subspace {
    pub fn span(vectors: &[Vec<Scalar>], ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rref: span_rref(vectors, ambient_dim),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace::span(&[], ambient_dim)
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis: Vec<Vec<Scalar>> = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![int(0); ambient_dim];
                v[i] = int(1);
                v
            })
            .collect();
        Subspace::span(&basis, ambient_dim)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rref.rank()
    }

    /// Echelon basis as dense vectors.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rref
            .rows
            .iter()
            .map(|row| {
                let mut v = vec![int(0); self.ambient_dim];
                for (c, a) in row {
                    v[*c] = a.clone();
                }
                v
            })
            .collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.rref.pivots
    }

    /// Coordinates not used as pivots; their basis vectors span a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        self.rref.free_columns()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.rref.contains(v)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains_vector(v))
    }

    /// Representative of `v` modulo the subspace, zero on pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rref.reduce(v)
    }
}

/// `Q(h)`: span of `[e_i,e_i]` and `[e_i,e_j] + [e_j,e_i]`.
pub fn squares_ideal(h: &LeibnizAlgebra) -> Subspace {
    let n = h.dim();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                h.basis_bracket(i, i).clone()
            } else {
                h.basis_bracket(i, j).plus(h.basis_bracket(j, i))
            };
            if !v.is_zero() {
                gens.push(dense(&v, n));
            }
        }
    }
    Subspace::span(&gens, n)
}

/// `z(h)`: all `x` with `[x, y] = 0` for every `y`.
pub fn left_center(h: &LeibnizAlgebra) -> Subspace {
    let n = h.dim();
    let mut m = ExactMatrix::zeros(n * n, n);
    for i in 0..n {
        for j in 0..n {
            for (k, v) in h.basis_bracket(i, j) {
                m.set(j * n + k, i, v.clone());
            }
        }
    }
    Subspace::span(&m.kernel_basis(), n)
}

/// Which ideal to quotient by when building the Lie algebra `g = h/z`.
#[derive(Clone, Debug, PartialEq)]
pub enum IdealChoice {
    Squares,
    LeftCenter,
    Custom(Subspace),
}

impl IdealChoice {
    pub fn resolve(&self, h: &LeibnizAlgebra) -> Subspace {
        match self {
            IdealChoice::Squares => squares_ideal(h),
            IdealChoice::LeftCenter => left_center(h),
            IdealChoice::Custom(z) => z.clone(),
        }
    }
}

/// The Lie quotient `g = h/z` together with the projection `p` and the
/// chosen section on complement coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub source: LeibnizAlgebra,
    pub ideal: Subspace,
    pub lie: LieAlgebra,
    /// `dim g × dim h` matrix of `p`.
    pub projection: ExactMatrix,
    /// `complement[a]` is the `h`-coordinate lifting the `a`-th basis vector of `g`.
    pub complement: Vec<usize>,
}

impl Quotient {
    pub fn g_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn h_dim(&self) -> usize {
        self.source.dim()
    }

    /// `p(v)` in `g`-coordinates.
    pub fn project(&self, v: &Vector) -> Vector {
        let r = self.ideal.reduce(&dense(v, self.h_dim()));
        sparse(
            &self
                .complement
                .iter()
                .map(|&c| r[c].clone())
                .collect::<Vec<_>>(),
        )
    }

    pub fn project_basis(&self, i: usize) -> Vector {
        self.project(&Vector::basis(i))
    }

    pub fn lift(&self, xi: &Vector) -> Vector {
        xi.map_linear(|&a| Vector::basis(self.complement[a]))
    }

    /// `ξ.y = [lift(ξ), y]` for the `a`-th basis vector of `g`.
    pub fn act_basis(&self, a: usize, y: &Vector) -> Vector {
        self.source.ad_basis(self.complement[a], y)
    }

    pub fn act(&self, xi: &Vector, y: &Vector) -> Vector {
        self.source.bracket(&self.lift(xi), y)
    }
}

pub fn quotient_lie(h: &LeibnizAlgebra, z: &Subspace) -> Result<Quotient, LeibnizError> {
    let n = h.dim();
    if z.ambient_dim() != n {
        return Err(LeibnizError::DimensionMismatch {
            expected: n,
            found: z.ambient_dim(),
        });
    }
    for b in z.basis() {
        let bv = sparse(&b);
        for j in 0..n {
            let ej = Vector::basis(j);
            let left = h.bracket(&ej, &bv);
            let right = h.bracket(&bv, &ej);
            if !z.contains_vector(&dense(&left, n)) || !z.contains_vector(&dense(&right, n)) {
                return Err(LeibnizError::NotAnIdeal);
            }
        }
    }
    if !z.contains(&squares_ideal(h)) {
        return Err(LeibnizError::IdealOutOfRange(
            "does not contain the span of squares".into(),
        ));
    }
    if !left_center(h).contains(z) {
        return Err(LeibnizError::IdealOutOfRange(
            "not contained in the left center".into(),
        ));
    }
    let complement = z.complement_columns();
    let gdim = complement.len();
    let mut projection = ExactMatrix::zeros(gdim, n);
    for i in 0..n {
        let mut e = vec![int(0); n];
        e[i] = int(1);
        let r = z.reduce(&e);
        for (a, &c) in complement.iter().enumerate() {
            if !r[c].is_zero() {
                projection.set(a, i, r[c].clone());
            }
        }
    }
    let names: Vec<String> = complement.iter().map(|&c| h.names()[c].clone()).collect();
    let mut partial = Quotient {
        source: h.clone(),
        ideal: z.clone(),
        lie: LieAlgebra::new(LeibnizAlgebra::from_table(0, Vec::new(), Vec::new()))?,
        projection,
        complement: complement.clone(),
    };
    let table: Vec<Vec<Vector>> = complement
        .iter()
        .map(|&ca| {
            complement
                .iter()
                .map(|&cb| partial.project(h.basis_bracket(ca, cb)))
                .collect()
        })
        .collect();
    let g = LeibnizAlgebra::from_table(gdim, names, table);
    let violations = g.leibniz_violations();
    if !violations.is_empty() {
        return Err(LeibnizError::IdentityViolation(violations));
    }
    partial.lie = LieAlgebra::new(g)?;
    Ok(partial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leibniz::catalog::catalog;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn sq2_ideals() {
        let h = catalog("sq2").unwrap();
        let q = squares_ideal(&h);
        assert_eq!(q, Subspace::span(&[v(&[0, 1])], 2));
        assert_eq!(left_center(&h), q);
    }

    #[test]
    fn heisenberg_center() {
        let h = catalog("heisenberg").unwrap();
        assert_eq!(left_center(&h), Subspace::span(&[v(&[0, 0, 1])], 3));
        assert_eq!(squares_ideal(&h).dim(), 0);
    }

    #[test]
    fn abelian_ideals() {
        let h = catalog("abelian3").unwrap();
        assert_eq!(squares_ideal(&h).dim(), 0);
        assert_eq!(left_center(&h).dim(), 3);
    }

    #[test]
    fn sq2_quotient_is_abelian_line() {
        let h = catalog("sq2").unwrap();
        let q = quotient_lie(&h, &squares_ideal(&h)).unwrap();
        assert_eq!(q.g_dim(), 1);
        assert!(q.lie.is_abelian());
        assert_eq!(q.project_basis(0), Vector::basis(0));
        assert!(q.project_basis(1).is_zero());
    }

    #[test]
    fn lie_quotient_by_zero_is_identity() {
        let h = catalog("sl2").unwrap();
        let q = quotient_lie(&h, &Subspace::zero(3)).unwrap();
        assert_eq!(q.projection, ExactMatrix::identity(3));
        assert_eq!(q.lie.as_leibniz(), &h);
    }

    #[test]
    fn abelian_quotient() {
        let h = catalog("abelian2").unwrap();
        let q = quotient_lie(&h, &Subspace::span(&[v(&[0, 1])], 2)).unwrap();
        assert_eq!(q.g_dim(), 1);
        assert!(q.lie.is_abelian());
    }

    #[test]
    fn sandwich_violations() {
        let h = catalog("sq2").unwrap();
        assert!(matches!(
            quotient_lie(&h, &Subspace::zero(2)),
            Err(LeibnizError::IdealOutOfRange(_))
        ));
        assert!(matches!(
            quotient_lie(&h, &Subspace::span(&[v(&[1, 0])], 2)),
            Err(LeibnizError::NotAnIdeal)
        ));
    }

    #[test]
    fn projection_is_bracket_compatible() {
        for name in ["sq2", "leib2", "leib3", "heisenberg", "hemi-leib3"] {
            let h = catalog(name).unwrap();
            for z in [squares_ideal(&h), left_center(&h)] {
                let Ok(q) = quotient_lie(&h, &z) else {
                    continue;
                };
                for i in 0..h.dim() {
                    for j in 0..h.dim() {
                        let lhs = q.project(h.basis_bracket(i, j));
                        let rhs = q.lie.bracket(&q.project_basis(i), &q.project_basis(j));
                        assert_eq!(lhs, rhs, "{name}");
                    }
                }
            }
        }
    }
}
