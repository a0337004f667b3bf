use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::check::{map_indices, witness, CheckResult};
use crate::foundation::{int, Combination, ExactMatrix, Scalar, Vector};
use crate::rack::RackBialgebra;

use super::DefError;

/// Default bound on the number of unknowns in a coderivation system.
pub const DEFAULT_CAP: usize = 20000;

/// A linear map `R^⊗n → R`, stored by its values on basis tuples
/// enumerated lexicographically (first factor most significant).
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    n: usize,
    dim: usize,
    values: Vec<Vector>,
}

impl Cochain {
    pub fn zero(dim: usize, n: usize) -> Self {
        Cochain {
            n,
            dim,
            values: vec![Vector::zero(); dim.pow(n as u32)],
        }
    }

    pub fn from_values(dim: usize, n: usize, values: Vec<Vector>) -> Result<Self, DefError> {
        if values.len() != dim.pow(n as u32) {
            return Err(DefError::DegreeMismatch {
                expected: dim.pow(n as u32),
                found: values.len(),
            });
        }
        Ok(Cochain { n, dim, values })
    }

    /// From a `dim × dim^n` matrix.
    pub fn from_matrix(dim: usize, n: usize, m: &ExactMatrix) -> Result<Self, DefError> {
        let cols = dim.pow(n as u32);
        if m.rows() != dim || m.cols() != cols {
            return Err(DefError::DegreeMismatch {
                expected: cols,
                found: m.cols(),
            });
        }
        let mut values = vec![Vector::zero(); cols];
        for ((r, c), v) in m.entries() {
            values[*c].add_term(*r, v.clone());
        }
        Ok(Cochain { n, dim, values })
    }

    /// From a flat coordinate vector in the order `k·dim^n + t`.
    pub fn from_flat(dim: usize, n: usize, flat: &[Scalar]) -> Self {
        let cols = dim.pow(n as u32);
        let mut values = vec![Vector::zero(); cols];
        for (idx, v) in flat.iter().enumerate() {
            if *v != int(0) {
                values[idx % cols].add_term(idx / cols, v.clone());
            }
        }
        Cochain { n, dim, values }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Vector] {
        &self.values
    }

    pub fn value(&self, tuple: &[usize]) -> &Vector {
        &self.values[encode(tuple, self.dim)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Vector::is_zero)
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.values.len());
        for (c, v) in self.values.iter().enumerate() {
            for (r, x) in v {
                m.set(*r, c, x.clone());
            }
        }
        m
    }

    pub fn to_flat(&self) -> Vec<Scalar> {
        let cols = self.values.len();
        let mut out = vec![int(0); self.dim * cols];
        for (c, v) in self.values.iter().enumerate() {
            for (r, x) in v {
                out[r * cols + c] = x.clone();
            }
        }
        out
    }

    pub fn plus(&self, other: &Cochain) -> Cochain {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.plus(b))
            .collect();
        Cochain { values, ..*self }
    }

    pub fn minus(&self, other: &Cochain) -> Cochain {
        self.plus(&other.scaled(&int(-1)))
    }

    pub fn scaled(&self, s: &Scalar) -> Cochain {
        Cochain {
            values: self.values.iter().map(|v| v.scaled(s)).collect(),
            n: self.n,
            dim: self.dim,
        }
    }

    /// Evaluates on a combination of basis tuples.
    pub fn eval(&self, args: &Combination<Vec<usize>, Scalar>) -> Vector {
        let mut out = Vector::zero();
        for (t, c) in args {
            out.add_scaled(self.value(t), c);
        }
        out
    }
}

impl Cochain {
    fn with_values(dim: usize, n: usize, values: Vec<Vector>) -> Self {
        Cochain { n, dim, values }
    }
}

pub(crate) fn encode(tuple: &[usize], dim: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * dim + x)
}

pub(crate) fn decode(mut idx: usize, dim: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = idx % dim;
        idx /= dim;
    }
    out
}

/// Tensor product of vectors as a combination of basis tuples.
pub fn expand(vectors: &[Vector]) -> Combination<Vec<usize>, Scalar> {
    let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), int(1))];
    for v in vectors {
        let mut next = Vec::with_capacity(acc.len() * v.len());
        for (t, c) in &acc {
            for (i, d) in v {
                let mut t2 = t.clone();
                t2.push(*i);
                next.push((t2, c * d));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    Combination::from_terms(acc)
}

/// Which face operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    /// `d_{i,1}` (1-based `i`).
    Act(usize),
    /// `d_{i,0}` (1-based `i`).
    Inner(usize),
    /// The extra face `d_{n+1}`.
    Last,
}

impl std::fmt::Display for Face {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Face::Act(i) => write!(f, "d_{{{i},1}}"),
            Face::Inner(i) => write!(f, "d_{{{i},0}}"),
            Face::Last => write!(f, "d_last"),
        }
    }
}

type Splits = Vec<(Vec<usize>, Vec<usize>, Scalar)>;

/// The deformation complex of a cocommutative rack bialgebra.
pub struct DeformationComplex {
    rack: RackBialgebra,
    dim: usize,
    cap: usize,
    last_sign: Scalar,
    mu_cache: Mutex<HashMap<Vec<usize>, Vector>>,
    iter_cache: Mutex<HashMap<(usize, usize), Arc<Combination<Vec<usize>, Scalar>>>>,
}

impl std::fmt::Debug for DeformationComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DeformationComplex")
            .field("dim", &self.dim)
            .field("cap", &self.cap)
            .finish()
    }
}

impl DeformationComplex {
    pub fn new(rack: RackBialgebra) -> Result<Self, DefError> {
        if !rack.coalgebra().is_cocommutative() {
            return Err(DefError::NotCocommutative);
        }
        let dim = rack.dim();
        Ok(DeformationComplex {
            rack,
            dim,
            cap: DEFAULT_CAP,
            last_sign: int(1),
            mu_cache: Mutex::new(HashMap::new()),
            iter_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Replaces `d_{n+1}` by `−d_{n+1}` everywhere (mutation testing).
    pub fn with_flipped_last_face(mut self) -> Self {
        self.last_sign = int(-1);
        self
    }

    pub fn rack(&self) -> &RackBialgebra {
        &self.rack
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn delta(&self, i: usize) -> &crate::rack::Tensor2 {
        self.rack.coalgebra().delta(i)
    }

    fn iterated(&self, i: usize, k: usize) -> Arc<Combination<Vec<usize>, Scalar>> {
        if let Some(hit) = self.iter_cache.lock().expect("cache lock").get(&(i, k)) {
            return Arc::clone(hit);
        }
        let v = Arc::new(self.rack.coalgebra().iterated_delta(i, k));
        self.iter_cache
            .lock()
            .expect("cache lock")
            .insert((i, k), Arc::clone(&v));
        v
    }

    /// `μ^n(r_1,…,r_n) = r_1▷(r_2▷(⋯▷r_n))` on a basis tuple.
    pub fn mu_n(&self, tuple: &[usize]) -> Vector {
        match tuple.len() {
            0 => panic!("μ^0 is undefined"),
            1 => return Vector::basis(tuple[0]),
            2 => return self.rack.product_basis(tuple[0], tuple[1]).clone(),
            _ => {}
        }
        if let Some(hit) = self.mu_cache.lock().expect("cache lock").get(tuple) {
            return hit.clone();
        }
        let inner = self.mu_n(&tuple[1..]);
        let out = self.rack.left(tuple[0], &inner);
        self.mu_cache
            .lock()
            .expect("cache lock")
            .insert(tuple.to_vec(), out.clone());
        out
    }

    pub fn mu_n_comb(&self, args: &Combination<Vec<usize>, Scalar>) -> Vector {
        let mut out = Vector::zero();
        for (t, c) in args {
            out.add_scaled(&self.mu_n(t), c);
        }
        out
    }

    /// `μ^n` as a cochain of degree `n`.
    pub fn mu_cochain(&self, n: usize) -> Cochain {
        let count = self.dim.pow(n as u32);
        let values = map_indices(count, |t| self.mu_n(&decode(t, self.dim, n)));
        Cochain::with_values(self.dim, n, values)
    }

    /// Σ over `Δ(r_1)⊗⋯⊗Δ(r_k)` of `(first legs, second legs, coefficient)`.
    pub(crate) fn split_prefix(&self, prefix: &[usize]) -> Splits {
        let mut acc: Splits = vec![(Vec::new(), Vec::new(), int(1))];
        for &r in prefix {
            let mut next = Vec::new();
            for (a, b, c) in &acc {
                for ((x, y), s) in self.delta(r) {
                    let mut a2 = a.clone();
                    a2.push(*x);
                    let mut b2 = b.clone();
                    b2.push(*y);
                    next.push((a2, b2, c * s));
                }
            }
            acc = next;
        }
        acc
    }

    fn check_face(&self, face: Face, n: usize) -> Result<(), DefError> {
        match face {
            Face::Act(i) | Face::Inner(i) if i == 0 || i > n => {
                Err(DefError::IndexOutOfRange { index: i, n })
            }
            _ => Ok(()),
        }
    }

    fn face_at(&self, face: Face, w: &Cochain, r: &[usize]) -> Vector {
        let n = w.degree();
        match face {
            Face::Act(i) => {
                let mut out = Vector::zero();
                for (a, b, c) in self.split_prefix(&r[..i - 1]) {
                    let mut left_args = a;
                    left_args.push(r[i - 1]);
                    let left = self.mu_n(&left_args);
                    if left.is_zero() {
                        continue;
                    }
                    let mut right_args = b;
                    right_args.extend_from_slice(&r[i..]);
                    let right = w.value(&right_args);
                    out.add_scaled(&self.rack.product(&left, right), &c);
                }
                out
            }
            Face::Inner(i) => {
                let m = n + 1 - i;
                let pieces = self.iterated(r[i - 1], m);
                let mut out = Vector::zero();
                for (parts, c) in pieces.iter() {
                    let mut args: Vec<Vector> =
                        r[..i - 1].iter().map(|&x| Vector::basis(x)).collect();
                    for (k, &p) in parts.iter().enumerate() {
                        args.push(self.rack.product_basis(p, r[i + k]).clone());
                    }
                    out.add_scaled(&w.eval(&expand(&args)), c);
                }
                out
            }
            Face::Last => {
                let mut out = Vector::zero();
                for (a, b, c) in self.split_prefix(&r[..n - 1]) {
                    let mut left_args = a;
                    left_args.push(r[n - 1]);
                    let left = w.value(&left_args);
                    if left.is_zero() {
                        continue;
                    }
                    let mut right_args = b;
                    right_args.push(r[n]);
                    let right = self.mu_n(&right_args);
                    out.add_scaled(&self.rack.product(left, &right), &c);
                }
                out.scaled_by(&self.last_sign)
            }
        }
    }

    /// One face operator applied to a cochain of degree `n`, giving degree `n+1`.
    pub fn face(&self, face: Face, w: &Cochain) -> Result<Cochain, DefError> {
        let n = w.degree();
        if n == 0 {
            return Err(DefError::IndexOutOfRange { index: 0, n });
        }
        self.check_face(face, n)?;
        let count = self.dim.pow(n as u32 + 1);
        let values = map_indices(count, |t| {
            self.face_at(face, w, &decode(t, self.dim, n + 1))
        });
        Ok(Cochain::with_values(self.dim, n + 1, values))
    }

    /// `d^n = Σ_{i=1}^n (−1)^{i+1}(d_{i,1} − d_{i,0}) + (−1)^{n+1} d_{n+1}`.
    pub fn differential(&self, w: &Cochain) -> Cochain {
        let n = w.degree();
        let count = self.dim.pow(n as u32 + 1);
        let values = map_indices(count, |t| {
            let r = decode(t, self.dim, n + 1);
            let mut out = Vector::zero();
            for i in 1..=n {
                let sign = if i % 2 == 1 { int(1) } else { int(-1) };
                let term =
                    self.face_at(Face::Act(i), w, &r)
                        .minus(&self.face_at(Face::Inner(i), w, &r));
                out.add_scaled(&term, &sign);
            }
            let sign = if n % 2 == 1 { int(1) } else { int(-1) };
            out.add_scaled(&self.face_at(Face::Last, w, &r), &sign);
            out
        });
        Cochain::with_values(self.dim, n + 1, values)
    }

    /// `Δ∘ω = (ω⊗μ^n + μ^n⊗ω)∘Δ` on every basis tuple.
    pub fn coderivation_check(&self, w: &Cochain) -> CheckResult {
        let n = w.degree();
        let c = self.rack.coalgebra();
        let count = self.dim.pow(n as u32);
        let outcomes = map_indices(count, |t| {
            let r = decode(t, self.dim, n);
            let lhs = c.delta_vec(w.value(&r));
            let mut rhs = crate::rack::Tensor2::zero();
            for (a, b, s) in self.split_prefix(&r) {
                let (wa, ma) = (w.value(&a), self.mu_n(&a));
                let (wb, mb) = (w.value(&b), self.mu_n(&b));
                for (p, x) in wa {
                    for (q, y) in &mb {
                        rhs.add_term((*p, *q), &s * x * y);
                    }
                }
                for (p, x) in &ma {
                    for (q, y) in wb {
                        rhs.add_term((*p, *q), &s * x * y);
                    }
                }
            }
            (lhs != rhs).then(|| {
                witness(
                    r.iter().map(|&x| c.label(x).to_string()).collect(),
                    c.render_tensor(&lhs),
                    c.render_tensor(&rhs),
                )
            })
        });
        CheckResult::from_outcomes("coderivation", outcomes)
    }

    /// A basis of `C^n(R;R)`, the coderivations `R^⊗n → R` along `μ^n`.
    pub fn coderivation_space(&self, n: usize) -> Result<Vec<Cochain>, DefError> {
        if n == 0 {
            return Ok(Vec::new());
        }
        let d = self.dim;
        let cols = d.checked_pow(n as u32).ok_or(DefError::TooLarge {
            unknowns: usize::MAX,
            cap: self.cap,
        })?;
        let unknowns = d * cols;
        if unknowns > self.cap {
            return Err(DefError::TooLarge {
                unknowns,
                cap: self.cap,
            });
        }
        let c = self.rack.coalgebra();
        let var = |k: usize, t: usize| k * cols + t;
        let blocks = map_indices(cols, |t| {
            let r = decode(t, d, n);
            let mut rows: HashMap<(usize, usize), Vec<(usize, Scalar)>> = HashMap::new();
            for k in 0..d {
                for ((p, q), s) in c.delta(k) {
                    rows.entry((*p, *q))
                        .or_default()
                        .push((var(k, t), s.clone()));
                }
            }
            for (a, b, s) in self.split_prefix(&r) {
                let (ta, tb) = (encode(&a, d), encode(&b, d));
                let (ma, mb) = (self.mu_n(&a), self.mu_n(&b));
                for (q, y) in &mb {
                    for p in 0..d {
                        rows.entry((p, *q))
                            .or_default()
                            .push((var(p, ta), -(&s * y)));
                    }
                }
                for (p, x) in &ma {
                    for q in 0..d {
                        rows.entry((*p, q))
                            .or_default()
                            .push((var(q, tb), -(&s * x)));
                    }
                }
            }
            let mut keys: Vec<_> = rows.keys().cloned().collect();
            keys.sort();
            keys.into_iter()
                .map(|k| rows.remove(&k).unwrap_or_default())
                .collect::<Vec<_>>()
        });
        let total: usize = blocks.iter().map(Vec::len).sum();
        let mut m = ExactMatrix::zeros(total, unknowns);
        let mut row = 0;
        for block in blocks {
            for entries in block {
                for (col, v) in entries {
                    m.add_to(row, col, &v);
                }
                row += 1;
            }
        }
        Ok(m.kernel_basis()
            .into_iter()
            .map(|v| Cochain::from_flat(d, n, &v))
            .collect())
    }
}
