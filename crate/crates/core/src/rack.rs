//! Finite racks as left-multiplication tables.
//!
//! Row `a` of a table is the map `ℓ_a: b ↦ a ⊳ b`. A table is a rack when
//! every row is a bijection and the operation is left self-distributive.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::perm::Perm;

/// The first reason a candidate table fails to be a rack.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("row {row} has {len} entries, expected {expected}")]
    NonSquare { row: usize, len: usize, expected: usize },
    #[error("entry {a} ⊳ {b} = {value} is out of range")]
    OutOfRange { a: usize, b: usize, value: usize },
    #[error("row {row} is not a bijection")]
    NotBijective { row: usize },
    #[error("self-distributivity fails at ({a}, {b}, {c})")]
    NotDistributive { a: usize, b: usize, c: usize },
}

/// Checks the rack axioms on a square table of rows.
///
/// Distributivity is checked in lexicographic order of `(a, b, c)`, so the
/// reported triple is the first violation in that order.
pub fn validate(rows: &[Vec<usize>]) -> std::result::Result<(), ValidationError> {
    let n = rows.len();
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(ValidationError::NonSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
    }
    for (a, r) in rows.iter().enumerate() {
        for (b, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(ValidationError::OutOfRange { a, b, value });
            }
        }
    }
    for (row, r) in rows.iter().enumerate() {
        let mut seen = vec![false; n];
        for &x in r {
            if std::mem::replace(&mut seen[x], true) {
                return Err(ValidationError::NotBijective { row });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = rows[a][rows[b][c]];
                let rhs = rows[rows[a][b]][rows[a][c]];
                if lhs != rhs {
                    return Err(ValidationError::NotDistributive { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// A sorted set of element indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Subset(indices)
    }

    pub fn full(n: usize) -> Self {
        Subset((0..n).collect())
    }

    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn complement(&self, n: usize) -> Subset {
        Subset((0..n).filter(|&x| !self.contains(x)).collect())
    }

    pub(crate) fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.0 {
            m[x] = true;
        }
        m
    }
}

impl From<Vec<usize>> for Subset {
    fn from(v: Vec<usize>) -> Self {
        Subset::new(v)
    }
}

/// A finite rack stored as an `n × n` table with `table[a][b] = a ⊳ b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RackTable {
    n: usize,
    data: Vec<usize>,
}

impl RackTable {
    /// Validates `rows` and builds the rack.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        validate(rows)?;
        Ok(Self::from_rows_unchecked(rows))
    }

    pub(crate) fn from_rows_unchecked(rows: &[Vec<usize>]) -> Self {
        let n = rows.len();
        RackTable {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Builds from a row-major flat table, checking the axioms in debug builds.
    pub(crate) fn from_flat_unchecked(n: usize, data: Vec<usize>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        let t = RackTable { n, data };
        debug_assert!(validate(&t.to_rows()).is_ok(), "invalid table {:?}", t);
        t
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn empty() -> Self {
        RackTable {
            n: 0,
            data: Vec::new(),
        }
    }

    /// The trivial quandle `a ⊳ b = b`.
    pub fn trivial(n: usize) -> Self {
        let data = (0..n).flat_map(|_| 0..n).collect();
        RackTable { n, data }
    }

    /// The singleton rack `⋆`.
    pub fn singleton() -> Self {
        Self::trivial(1)
    }

    /// The permutation rack `a ⊳ b = π(b)`.
    pub fn permutation_rack(p: &Perm) -> Self {
        let n = p.degree();
        let data = (0..n).flat_map(|_| p.images().iter().copied()).collect();
        RackTable { n, data }
    }

    /// The permutation rack of the full `n`-cycle `b ↦ b + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        let p = Perm::from_images_unchecked((0..n).map(|b| (b + 1) % n).collect());
        Self::permutation_rack(&p)
    }

    /// The dihedral quandle `a ⊳ b = 2a − b mod n`.
    pub fn dihedral(n: usize) -> Self {
        let data = (0..n)
            .flat_map(|a| (0..n).map(move |b| (2 * a + 2 * n - b) % n))
            .collect();
        RackTable::from_flat_unchecked(n, data)
    }

    /// The tetrahedral quandle: the conjugacy class of `(0 1 2)` in `A_4`.
    pub fn tetrahedral() -> Self {
        let gens = [
            Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
        ];
        let a4 = FinGroup::from_permutations(4, &gens).expect("A4");
        let g = a4
            .index_of_perm(&Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap())
            .expect("3-cycle in A4");
        let class = a4.conjugacy_class(g);
        Self::conjugation_class_quandle(&a4, &class).expect("conjugacy class")
    }

    /// The conjugation quandle `g ⊳ h = g h g⁻¹` on all of `G`.
    pub fn conjugation_quandle(group: &FinGroup) -> Self {
        let all: Vec<usize> = (0..group.order()).collect();
        Self::conjugation_class_quandle(group, &all).expect("whole group is conjugation closed")
    }

    /// The conjugation quandle on a union of conjugacy classes. Elements are
    /// indexed in the order given in `class` after sorting.
    pub fn conjugation_class_quandle(group: &FinGroup, class: &[usize]) -> Result<Self> {
        let mut elems = class.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let mut position = vec![usize::MAX; group.order()];
        for (i, &g) in elems.iter().enumerate() {
            if g >= group.order() {
                return Err(Error::OutOfRange {
                    index: g,
                    size: group.order(),
                });
            }
            position[g] = i;
        }
        let n = elems.len();
        let mut data = Vec::with_capacity(n * n);
        for &g in &elems {
            for &h in &elems {
                let c = group.conj(g, h);
                if position[c] == usize::MAX {
                    return Err(Error::NotConjugationClosed);
                }
                data.push(position[c]);
            }
        }
        Ok(RackTable::from_flat_unchecked(n, data))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `a ⊳ b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.data[a * self.n + b]
    }

    /// The row `ℓ_a` as a slice.
    #[inline]
    pub fn row(&self, a: usize) -> &[usize] {
        &self.data[a * self.n..(a + 1) * self.n]
    }

    pub fn left_mult(&self, a: usize) -> Perm {
        Perm::from_images_unchecked(self.row(a).to_vec())
    }

    pub fn left_mults(&self) -> Vec<Perm> {
        (0..self.n).map(|a| self.left_mult(a)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| self.row(a).to_vec()).collect()
    }

    pub(crate) fn flat(&self) -> &[usize] {
        &self.data
    }

    /// `a ⊳⁻¹ b`, i.e. `ℓ_a⁻¹(b)`.
    pub fn op_inv(&self, a: usize, b: usize) -> usize {
        self.row(a).iter().position(|&x| x == b).unwrap()
    }

    /// The canonical automorphism `σ(a) = a ⊳ a`.
    pub fn canonical_automorphism(&self) -> Perm {
        let images: Vec<usize> = (0..self.n).map(|a| self.op(a, a)).collect();
        Perm::from_images(images).expect("the diagonal of a rack is a bijection")
    }

    pub fn is_quandle(&self) -> bool {
        (0..self.n).all(|a| self.op(a, a) == a)
    }

    /// The quandle `x ⊳' y = σ⁻¹(x ⊳ y)` on the same set.
    pub fn untwist(&self) -> RackTable {
        let sigma_inv = self.canonical_automorphism().inverse();
        let data = self.data.iter().map(|&x| sigma_inv.apply(x)).collect();
        RackTable::from_flat_unchecked(self.n, data)
    }

    /// The rack with `ℓ_a` replaced by `ℓ_a^k`; negative `k` uses inverses.
    pub fn power(&self, k: i64) -> RackTable {
        let mut data = Vec::with_capacity(self.n * self.n);
        for a in 0..self.n {
            data.extend_from_slice(self.left_mult(a).pow(k).images());
        }
        RackTable::from_flat_unchecked(self.n, data)
    }

    /// Cartesian product; the pair `(a, b)` has index `a * |S| + b`.
    pub fn product(&self, other: &RackTable) -> RackTable {
        let (n, m) = (self.n, other.n);
        let size = n * m;
        let mut data = Vec::with_capacity(size * size);
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        data.push(self.op(a, c) * m + other.op(b, d));
                    }
                }
            }
        }
        RackTable::from_flat_unchecked(size, data)
    }

    /// Brieskorn's disjoint union: blocks act internally as given and
    /// trivially on each other. `self` occupies the first indices.
    pub fn disjoint_union(&self, other: &RackTable) -> RackTable {
        let (n, m) = (self.n, other.n);
        let size = n + m;
        let mut data = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                let v = match (a < n, b < n) {
                    (true, true) => self.op(a, b),
                    (false, false) => n + other.op(a - n, b - n),
                    _ => b,
                };
                data.push(v);
            }
        }
        RackTable::from_flat_unchecked(size, data)
    }

    fn check_subset(&self, s: &Subset) -> Result<()> {
        match s.indices().last() {
            Some(&x) if x >= self.n => Err(Error::OutOfRange {
                index: x,
                size: self.n,
            }),
            _ => Ok(()),
        }
    }

    fn preserves(&self, actors: &[usize], s: &Subset) -> bool {
        let mask = s.mask(self.n);
        actors
            .iter()
            .all(|&a| s.indices().iter().all(|&x| mask[self.op(a, x)]))
    }

    /// `ℓ_s(S) = S` for every `s ∈ S`.
    pub fn is_subrack(&self, s: &Subset) -> Result<bool> {
        self.check_subset(s)?;
        Ok(self.preserves(s.indices(), s))
    }

    /// `ℓ_r(S) = S` for every `r` in the rack.
    pub fn is_ideal(&self, s: &Subset) -> Result<bool> {
        self.check_subset(s)?;
        let all: Vec<usize> = (0..self.n).collect();
        Ok(self.preserves(&all, s))
    }

    /// The subrack on `s`, reindexed in increasing order.
    pub fn restrict(&self, s: &Subset) -> Result<RackTable> {
        if !self.is_subrack(s)? {
            return Err(Error::NotSubrack);
        }
        Ok(self.restrict_unchecked(s.indices()))
    }

    pub(crate) fn restrict_unchecked(&self, s: &[usize]) -> RackTable {
        let mut position = vec![usize::MAX; self.n];
        for (i, &x) in s.iter().enumerate() {
            position[x] = i;
        }
        let mut data = Vec::with_capacity(s.len() * s.len());
        for &a in s {
            for &b in s {
                data.push(position[self.op(a, b)]);
            }
        }
        RackTable::from_flat_unchecked(s.len(), data)
    }

    /// Points fixed by every left multiplication.
    pub fn tau(&self) -> Subset {
        let s = Subset::new(
            (0..self.n)
                .filter(|&y| (0..self.n).all(|x| self.op(x, y) == y))
                .collect(),
        );
        debug_assert!(self.is_ideal(&s).unwrap());
        s
    }

    /// Idempotents that act trivially on all idempotents.
    pub fn tau_prime(&self) -> Subset {
        let idem: Vec<usize> = (0..self.n).filter(|&y| self.op(y, y) == y).collect();
        let s = Subset::new(
            idem.iter()
                .copied()
                .filter(|&x| idem.iter().all(|&y| self.op(x, y) == y))
                .collect(),
        );
        debug_assert!(self.is_subrack(&s).unwrap());
        s
    }

    /// The quotient by the orbits of `σ`, which is a quandle, together with
    /// the projection. Orbits are indexed by least element.
    pub fn associated_quandle(&self) -> (RackTable, Vec<usize>) {
        let cycles = self.canonical_automorphism().cycles();
        let mut projection = vec![0; self.n];
        for (i, c) in cycles.iter().enumerate() {
            for &x in c {
                projection[x] = i;
            }
        }
        let m = cycles.len();
        let mut data = Vec::with_capacity(m * m);
        for ci in &cycles {
            for cj in &cycles {
                data.push(projection[self.op(ci[0], cj[0])]);
            }
        }
        (RackTable::from_flat_unchecked(m, data), projection)
    }

    /// Transports the structure along `p`: the result has
    /// `p(a) ⊳ p(b) = p(a ⊳ b)`.
    pub fn relabel(&self, p: &Perm) -> RackTable {
        assert_eq!(p.degree(), self.n);
        let mut data = vec![0; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                data[p.apply(a) * self.n + p.apply(b)] = p.apply(self.op(a, b));
            }
        }
        RackTable { n: self.n, data }
    }

    /// Whether `p` is a morphism from `self` to `target`.
    pub fn is_morphism_to(&self, target: &RackTable, p: &[usize]) -> bool {
        p.len() == self.n
            && (0..self.n).all(|a| (0..self.n).all(|b| p[self.op(a, b)] == target.op(p[a], p[b])))
    }
}

impl fmt::Debug for RackTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RackTable({}) {:?}", self.n, self.to_rows())
    }
}
