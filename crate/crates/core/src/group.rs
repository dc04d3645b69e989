//! Finite groups given by Cayley tables.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::permgroup::closure;

/// A 2×2 matrix over `F_p`, row-major.
pub type Mat2 = [u64; 4];

/// A finite group with elements `0..n`, multiplication table `cayley` and
/// identity `0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinGroup {
    cayley: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    #[serde(skip)]
    perms: Option<Vec<Perm>>,
    #[serde(skip)]
    matrices: Option<(u64, Vec<Mat2>)>,
}

impl FinGroup {
    /// Validates a Cayley table: identity at 0, closure, inverses and
    /// associativity.
    pub fn from_cayley(cayley: Vec<Vec<usize>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::InvalidGroup("a group has at least one element".into()));
        }
        for (i, row) in cayley.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has {} entries", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range in row {i}")));
            }
        }
        if (0..n).any(|a| cayley[0][a] != a || cayley[a][0] != a) {
            return Err(Error::InvalidGroup("element 0 is not the identity".into()));
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| cayley[a][b] == 0 && cayley[b][a] == 0) {
                Some(b) => inverses[a] = b,
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = cayley[a][b];
                for c in 0..n {
                    if cayley[ab][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FinGroup {
            cayley,
            inverses,
            perms: None,
            matrices: None,
        })
    }

    /// The group of the given distinct permutations, which must be closed
    /// under composition. Element `i` is `elements[i]`; the identity must
    /// come first.
    pub fn from_perm_list(elements: Vec<Perm>) -> Result<Self> {
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::InvalidGroup("repeated permutation".into()));
        }
        let mut cayley = Vec::with_capacity(elements.len());
        for p in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for q in &elements {
                let pq = p.compose(q)?;
                match index.get(&pq) {
                    Some(&i) => row.push(i),
                    None => return Err(Error::InvalidGroup("permutations not closed".into())),
                }
            }
            cayley.push(row);
        }
        let mut g = Self::from_cayley(cayley)?;
        g.perms = Some(elements);
        Ok(g)
    }

    /// The permutation group generated by `gens`, elements sorted
    /// lexicographically so the identity is element 0.
    pub fn from_permutations(degree: usize, gens: &[Perm]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        let mut elements: Vec<Perm> = closure(degree, gens).into_iter().collect();
        elements.sort();
        Self::from_perm_list(elements)
    }

    pub fn symmetric(n: usize) -> Self {
        Self::from_perm_list(crate::perm::all_perms(n)).expect("Sym(n)")
    }

    pub fn cyclic(n: usize) -> Self {
        let cayley = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_cayley(cayley).expect("Z/n")
    }

    /// The subgroup of `SL_2(F_p)` generated by the given matrices, found by
    /// breadth-first search from the identity.
    pub fn from_matrices(p: u64, gens: &[Mat2]) -> Result<Self> {
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::InvalidGroup(format!("{p} is not prime")));
        }
        let gens: Vec<Mat2> = gens.iter().map(|m| m.map(|x| x % p)).collect();
        for m in &gens {
            if (m[0] * m[3] + p * p - m[1] * m[2] % p) % p != 1 {
                return Err(Error::InvalidGroup(format!("{m:?} has determinant ≠ 1")));
            }
        }
        let identity: Mat2 = [1, 0, 0, 1];
        let mut elements = vec![identity];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = mat_mul(p, g, &x);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                    e.insert(elements.len());
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        let cayley = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&mat_mul(p, a, b)]).collect())
            .collect();
        let mut g = Self::from_cayley(cayley)?;
        g.matrices = Some((p, elements));
        Ok(g)
    }

    /// `G × H` with `(g, h)` at index `g * |H| + h`.
    pub fn direct_product(&self, other: &FinGroup) -> FinGroup {
        let (n, m) = (self.order(), other.order());
        let cayley = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_cayley(cayley).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g h g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn perm_of(&self, g: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[g])
    }

    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }

    pub fn matrix_of(&self, g: usize) -> Option<Mat2> {
        self.matrices.as_ref().map(|(_, m)| m[g])
    }

    /// Locates a matrix, reducing entries (which may be negative) mod `p`.
    pub fn index_of_matrix(&self, m: [i64; 4]) -> Option<usize> {
        let (p, mats) = self.matrices.as_ref()?;
        let m = m.map(|x| x.rem_euclid(*p as i64) as u64);
        mats.iter().position(|q| *q == m)
    }

    /// The sorted subgroup generated by `gens`.
    pub fn subgroup_from(&self, gens: &[usize]) -> Result<Vec<usize>> {
        for &g in gens {
            self.check(g)?;
        }
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        Ok((0..self.order()).filter(|&x| inside[x]).collect())
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.iter().any(|&x| x >= self.order()) {
            return false;
        }
        let mut inside = vec![false; self.order()];
        for &x in set {
            inside[x] = true;
        }
        inside[0]
            && set
                .iter()
                .all(|&a| inside[self.inv(a)] && set.iter().all(|&b| inside[self.mul(a, b)]))
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| self.mul(x, g) == self.mul(g, x))
            .collect()
    }

    pub fn conjugacy_class(&self, g: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.order()).map(|x| self.conj(x, g)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Conjugacy classes ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if !seen[g] {
                let c = self.conjugacy_class(g);
                for &x in &c {
                    seen[x] = true;
                }
                out.push(c);
            }
        }
        out
    }

    /// The intersection of all conjugates of `h`.
    pub fn normal_core(&self, h: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        for &x in h {
            inside[x] = true;
        }
        h.iter()
            .copied()
            .filter(|&x| (0..self.order()).all(|g| inside[self.conj(g, x)]))
            .collect()
    }

    /// Left cosets `αH`, each sorted, ordered by least element.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for a in 0..self.order() {
            if !seen[a] {
                let mut c: Vec<usize> = h.iter().map(|&x| self.mul(a, x)).collect();
                c.sort_unstable();
                for &x in &c {
                    seen[x] = true;
                }
                out.push(c);
            }
        }
        out
    }

    pub(crate) fn check(&self, g: usize) -> Result<()> {
        if g < self.order() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                index: g,
                size: self.order(),
            })
        }
    }

    pub(crate) fn require_subgroup(&self, h: &[usize]) -> Result<Vec<usize>> {
        let mut h = h.to_vec();
        h.sort_unstable();
        h.dedup();
        if self.is_subgroup(&h) {
            Ok(h)
        } else {
            Err(Error::NotSubgroup(h))
        }
    }

    /// Whether `f` (given by images) is a homomorphism into `target`.
    pub fn is_homomorphism_to(&self, target: &FinGroup, f: &[usize]) -> bool {
        f.len() == self.order()
            && f.iter().all(|&x| x < target.order())
            && (0..self.order())
                .all(|a| (0..self.order()).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }
}

fn mat_mul(p: u64, a: &Mat2, b: &Mat2) -> Mat2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

/// Standard generators of `SL_2(F_p)`: the two elementary unipotents.
pub fn sl2_generators(p: u64) -> Vec<Mat2> {
    vec![[1, 1, 0, 1], [1, 0, 1, 1]]
        .into_iter()
        .map(|m: Mat2| m.map(|x| x % p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_basics() {
        let s3 = FinGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(s3.perm_of(0).unwrap().is_identity());
        let t = s3
            .index_of_perm(&Perm::from_cycles(3, &[&[0, 1]]).unwrap())
            .unwrap();
        assert_eq!(s3.centralizer(t).len(), 2);
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(s3.normal_core(&all), all);
        assert_eq!(s3.normal_core(&[0, t]), vec![0]);
    }

    #[test]
    fn sl2_f3_has_order_24() {
        let g = FinGroup::from_matrices(3, &sl2_generators(3)).unwrap();
        assert_eq!(g.order(), 24);
        let minus_one = g.index_of_matrix([-1, 0, 0, -1]).unwrap();
        assert_eq!(g.centralizer(minus_one).len(), 24);
        assert_eq!(g.conjugacy_classes().len(), 7);
        assert_eq!(
            FinGroup::from_matrices(5, &sl2_generators(5)).unwrap().order(),
            120
        );
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FinGroup::from_cayley(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FinGroup::from_cayley(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(FinGroup::from_cayley(vec![]).is_err());
        // a Latin square with identity 0 that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FinGroup::from_cayley(loop5).is_err());
    }

    #[test]
    fn subgroups_and_cosets() {
        let z6 = FinGroup::cyclic(6);
        assert_eq!(z6.subgroup_from(&[2]).unwrap(), vec![0, 2, 4]);
        assert!(z6.is_subgroup(&[0, 3]));
        assert!(!z6.is_subgroup(&[0, 1]));
        assert_eq!(z6.left_cosets(&[0, 3]), vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(z6.element_order(2), 3);
    }

    #[test]
    fn direct_product_indexing() {
        let g = FinGroup::cyclic(2).direct_product(&FinGroup::cyclic(3));
        assert_eq!(g.order(), 6);
        // (1,1)·(1,2) = (0,0)
        assert_eq!(g.mul(4, 5), 0);
        assert_eq!(g.element_order(4), 6);
    }
}
