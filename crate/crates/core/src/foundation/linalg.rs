//! Exact sparse linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::scalar::{int, Scalar};

/// Sparse rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

/// Reduced row echelon form: sparse rows plus pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<BTreeMap<usize, Scalar>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, int(1));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = ExactMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| int(0))
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![int(0); self.cols]; self.rows];
        for ((r, c), v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    out.add_to(*i, *j, &(a * *b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = vec![int(0); self.rows];
        for ((r, c), a) in &self.entries {
            out[*r] += a * &v[*c];
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            out.set(*c, *r, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.add_to(*r, *c, &-v);
        }
        out
    }

    /// Gauss-Jordan elimination to the unique reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].insert(*c, v.clone());
        }
        rows.retain(|r| !r.is_empty());
        rref_rows(rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one dense vector per free column, in
    /// increasing order of the free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.rref().kernel_basis()
    }

    /// A particular solution of `A x = b`, with free variables set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let n = self.cols;
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].insert(*c, v.clone());
        }
        for (r, v) in b.iter().enumerate() {
            if !v.is_zero() {
                rows[r].insert(n, v.clone());
            }
        }
        rows.retain(|r| !r.is_empty());
        let red = rref_rows(rows, n + 1);
        if red.pivots.contains(&n) {
            return None;
        }
        let mut x = vec![int(0); n];
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            x[p] = row.get(&n).cloned().unwrap_or_else(|| int(0));
        }
        Some(x)
    }
}

fn rref_rows(mut pending: Vec<BTreeMap<usize, Scalar>>, cols: usize) -> Rref {
    let mut reduced: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    // Rows are reduced one at a time against the current basis, which
    // keeps everything sparse for the matrices arising here.
    for mut row in pending.drain(..) {
        for (basis_row, &p) in reduced.iter().zip(&pivots) {
            if let Some(f) = row.get(&p).cloned() {
                axpy(&mut row, basis_row, &-f);
            }
        }
        let Some((&p, lead)) = row.iter().next() else {
            continue;
        };
        let inv = lead.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in reduced.iter_mut() {
            if let Some(f) = other.get(&p).cloned() {
                axpy(other, &row, &-f);
            }
        }
        reduced.push(row);
        pivots.push(p);
    }
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let rows = order.iter().map(|&i| reduced[i].clone()).collect();
    let pivots = order.iter().map(|&i| pivots[i]).collect();
    Rref { rows, pivots, cols }
}

fn axpy(target: &mut BTreeMap<usize, Scalar>, src: &BTreeMap<usize, Scalar>, f: &Scalar) {
    for (c, v) in src {
        let e = target.entry(*c).or_insert_with(|| int(0));
        *e += v * f;
        if e.is_zero() {
            target.remove(c);
        }
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![int(0); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Some(a) = row.get(&f) {
                        v[p] = -a;
                    }
                }
                v
            })
            .collect()
    }

    /// Reduces `v` modulo the row space; the result vanishes on pivots.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (c, a) in row {
                out[*c] -= a * &f;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Rank of the span of a list of dense vectors.
pub fn span_rank(vectors: &[Vec<Scalar>], dim: usize) -> usize {
    span_rref(vectors, dim).rank()
}

pub fn span_rref(vectors: &[Vec<Scalar>], dim: usize) -> Rref {
    let rows = vectors
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| (i, a.clone()))
                .collect::<BTreeMap<_, _>>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    rref_rows(rows, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::scalar::frac;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            a.solve(&[int(1), int(1)]).unwrap(),
            vec![frac(1, 2), frac(1, 3)]
        );
        let b = m(&[&[1, 1], &[1, 1]]);
        assert!(b.solve(&[int(1), int(2)]).is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(-3i64..4, 12)) {
            let rows: Vec<Vec<Scalar>> = entries.chunks(4).map(|c| c.iter().map(|&x| int(x)).collect()).collect();
            let a = ExactMatrix::from_dense(&rows);
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.len(), 4);
            for v in &k {
                prop_assert!(a.apply(v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }
    }
}
