use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::check::{witness, CheckResult};
use crate::foundation::Vector;

use super::bialgebra::RackBialgebra;
use super::coalgebra::Coalgebra;
use super::RackError;

/// A finite pointed rack on `0..size` with operation table `op[x][y] = x▷y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRack {
    size: usize,
    unit: usize,
    op: Vec<Vec<usize>>,
}

impl FiniteRack {
    pub fn new(size: usize, unit: usize, op: Vec<Vec<usize>>) -> Result<Self, RackError> {
        if let Some(msg) = rack_table_problem(size, unit, &op, true) {
            return Err(RackError::InvalidRack(msg));
        }
        Ok(FiniteRack { size, unit, op })
    }

    /// Dihedral rack `x▷y = 2x − y mod n` on `0..n` with a unit `n` adjoined.
    pub fn dihedral_with_unit(n: usize) -> Self {
        let mut op = vec![vec![0; n + 1]; n + 1];
        for x in 0..=n {
            for y in 0..=n {
                op[x][y] = if x == n {
                    y
                } else if y == n {
                    n
                } else {
                    (2 * x + n - y) % n
                };
            }
        }
        FiniteRack::new(n + 1, n, op).expect("dihedral rack")
    }

    pub fn trivial_point() -> Self {
        FiniteRack::new(1, 0, vec![vec![0]]).expect("one-point rack")
    }

    /// Conjugation rack `x▷y = x y x⁻¹` of a group, pointed at the identity.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let n = g.order();
        let op = (0..n)
            .map(|x| (0..n).map(|y| g.conj(x, y)).collect())
            .collect();
        FiniteRack::new(n, g.identity(), op).expect("conjugation rack")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }

    /// The permutation group generated by the rows `x▷−`, with the
    /// augmentation `x ↦ (x▷−)` and the natural action on the rack.
    pub fn inner_group(&self) -> (FiniteGroup, Vec<usize>) {
        let identity: Vec<usize> = (0..self.size).collect();
        let gens: Vec<Vec<usize>> = self.op.clone();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
        elems.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q: Vec<usize> = (0..self.size).map(|i| g[p[i]]).collect();
                if elems.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let group = FiniteGroup::from_permutations(elems.into_iter().collect());
        let p = self
            .op
            .iter()
            .map(|row| group.index_of_permutation(row).expect("row in group"))
            .collect();
        (group, p)
    }
}

/// Describes the first table-axiom failure. Row bijectivity is checked
/// only when `bijective` is set.
pub fn rack_table_problem(
    size: usize,
    unit: usize,
    op: &[Vec<usize>],
    bijective: bool,
) -> Option<String> {
    if size == 0 {
        return Some("empty rack".into());
    }
    if unit >= size {
        return Some(format!("unit {unit} out of range"));
    }
    if op.len() != size || op.iter().any(|r| r.len() != size) {
        return Some("operation table has wrong shape".into());
    }
    if op.iter().flatten().any(|&v| v >= size) {
        return Some("table entry out of range".into());
    }
    if bijective {
        for (x, row) in op.iter().enumerate() {
            let distinct: BTreeSet<_> = row.iter().collect();
            if distinct.len() != size {
                return Some(format!("row {x} is not a bijection"));
            }
        }
    }
    for x in 0..size {
        if op[unit][x] != x {
            return Some(format!("e▷{x} != {x}"));
        }
        if op[x][unit] != unit {
            return Some(format!("{x}▷e != e"));
        }
    }
    for x in 0..size {
        for y in 0..size {
            for z in 0..size {
                if op[x][op[y][z]] != op[op[x][y]][op[x][z]] {
                    return Some(format!("self-distributivity fails at ({x},{y},{z})"));
                }
            }
        }
    }
    None
}

/// `K[X]` with set-like coproduct and product induced by the table.
pub fn from_finite_rack(x: &FiniteRack) -> RackBialgebra {
    kx_from_table(x.size, x.unit, &x.op)
}

/// `K[X]` for an arbitrary table, without validating it.
pub fn kx_from_table(size: usize, unit: usize, op: &[Vec<usize>]) -> RackBialgebra {
    let labels = (0..size)
        .map(|i| {
            if i == unit {
                "e".to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect();
    let coalg = Arc::new(Coalgebra::set_like(labels, unit));
    let table = op
        .iter()
        .map(|row| row.iter().map(|&v| Vector::basis(v)).collect())
        .collect();
    RackBialgebra::new(coalg, table).expect("square table")
}

/// A finite group by multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    perms: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    pub fn from_table(mul: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, RackError> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n) || labels.len() != n {
            return Err(RackError::InvalidGroup("table shape".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| RackError::InvalidGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| mul[x][y] == identity)
                .ok_or_else(|| RackError::InvalidGroup(format!("{x} has no inverse")))?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                        return Err(RackError::InvalidGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            mul,
            identity,
            inverse,
            labels,
            perms: None,
        })
    }

    /// Group of the given permutations (must be closed); `(p·q)(i) = p(q(i))`.
    pub fn from_permutations(perms: Vec<Vec<usize>>) -> Self {
        let index: BTreeMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let n = perms.len();
        let mul = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let q: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
                        index[&q]
                    })
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| {
                format!(
                    "[{}]",
                    p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("")
                )
            })
            .collect();
        let mut g = FiniteGroup::from_table(mul, labels).expect("permutation group");
        g.perms = Some(perms);
        g
    }

    /// The symmetric group on `n` letters.
    pub fn symmetric(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            perms.push(p.clone());
            if !crate::envelope::pbw::next_permutation(&mut p) {
                break;
            }
        }
        FiniteGroup::from_permutations(perms)
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }

    pub fn index_of_permutation(&self, p: &[usize]) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }
}

/// Checks `p(g.x) = g p(x) g⁻¹` for an action `act[g][x]` of `G` on `X`.
pub fn augmentation_equivariance(g: &FiniteGroup, p: &[usize], act: &[Vec<usize>]) -> CheckResult {
    let mut res = CheckResult::new("augmentation_equivariance");
    for h in 0..g.order() {
        for (x, &px) in p.iter().enumerate() {
            let lhs = p[act[h][x]];
            let rhs = g.conj(h, px);
            res.record(lhs == rhs, || {
                witness(
                    vec![g.label(h).to_string(), x.to_string()],
                    g.label(lhs).to_string(),
                    g.label(rhs).to_string(),
                )
            });
        }
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::bialgebra::verify_rack_axioms;

    #[test]
    fn dihedral_values() {
        let r3 = FiniteRack::dihedral_with_unit(3);
        assert_eq!(r3.size(), 4);
        assert_eq!(r3.op(0, 1), 2);
        assert!(verify_rack_axioms(&from_finite_rack(&r3)).passed());
    }

    #[test]
    fn one_point_rack() {
        let k = from_finite_rack(&FiniteRack::trivial_point());
        assert_eq!(k.dim(), 1);
        assert!(verify_rack_axioms(&k).passed());
    }

    #[test]
    fn invalid_tables() {
        assert!(matches!(
            FiniteRack::new(2, 0, vec![vec![0, 1], vec![0, 0]]),
            Err(RackError::InvalidRack(_))
        ));
        assert!(FiniteRack::new(2, 0, vec![vec![0, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn s3_conjugation_rack() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let x = FiniteRack::conjugation(&s3);
        assert!(verify_rack_axioms(&from_finite_rack(&x)).passed());
        let act: Vec<Vec<usize>> = (0..6)
            .map(|g| (0..6).map(|y| s3.conj(g, y)).collect())
            .collect();
        let p: Vec<usize> = (0..6).collect();
        assert!(augmentation_equivariance(&s3, &p, &act).passed());
    }

    #[test]
    fn inner_group_of_r3_is_s3() {
        let (g, p) = FiniteRack::dihedral_with_unit(3).inner_group();
        assert_eq!(g.order(), 6);
        assert_eq!(p[3], g.identity());
    }
}
