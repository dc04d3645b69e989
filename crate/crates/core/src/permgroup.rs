//! Permutation groups given by generators, with a deterministic
//! Schreier–Sims stabilizer chain.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x`, for `x` in the orbit.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild();
        level
    }

    fn rebuild(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            let ux = self.transversal[x].clone().unwrap();
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    self.transversal[y] = Some(g.compose_unchecked(&ux));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group of fixed degree with its stabilizer chain.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// The group generated by `gens`, all of degree `degree`.
    pub fn from_generators(degree: usize, gens: &[Perm]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut group = PermGroup {
            degree,
            generators: gens.to_vec(),
            levels: Vec::new(),
        };
        group.schreier_sims();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    fn smallest_moved_point_outside_base(&self, g: &Perm) -> usize {
        let base = self.base();
        (0..self.degree)
            .find(|&x| g.apply(x) != x && !base.contains(&x))
            .expect("non-identity element fixing the base moves some other point")
    }

    fn schreier_sims(&mut self) {
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return;
        }
        // Base: every generator must move some base point.
        for g in &gens {
            if self.levels.iter().all(|l| g.apply(l.base) == l.base) {
                let b = self.smallest_moved_point_outside_base(g);
                self.levels.push(Level::new(b, self.degree));
            }
        }
        for g in &gens {
            for level in self.levels.iter_mut() {
                level.gens.push(g.clone());
                if g.apply(level.base) != level.base {
                    break;
                }
            }
        }
        for level in self.levels.iter_mut() {
            level.rebuild();
        }

        let mut i = self.levels.len();
        while i >= 1 {
            let idx = i - 1;
            match self.find_failing_schreier_generator(idx) {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let b = self.smallest_moved_point_outside_base(&residue);
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in idx + 1..=j {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild();
                    }
                    i = j + 1;
                }
            }
        }
    }

    /// Returns the residue of the first Schreier generator at `idx` that
    /// does not sift through the deeper levels, with the level it stopped at.
    fn find_failing_schreier_generator(&self, idx: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[idx];
        for &x in &level.orbit {
            let ux = level.transversal[x].as_ref().unwrap();
            for s in &level.gens {
                let y = s.apply(x);
                let uy_inv = level.transversal[y].as_ref().unwrap().inverse();
                let h = uy_inv.compose_unchecked(&s.compose_unchecked(ux));
                let (residue, j) = self.strip(h, idx + 1);
                if !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    fn strip(&self, mut h: Perm, start: usize) -> (Perm, usize) {
        for l in start..self.levels.len() {
            let level = &self.levels[l];
            let beta = h.apply(level.base);
            match &level.transversal[beta] {
                None => return (h, l),
                Some(u) => h = u.inverse().compose_unchecked(&h),
            }
        }
        (h, self.levels.len())
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        let (residue, _) = self.strip(p.clone(), 0);
        Ok(residue.is_identity())
    }

    /// Orbit partition; each orbit sorted, orbits ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// All elements, sorted by image sequence. Errors when the order is
    /// above `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > limit as u128 {
            return Err(Error::BoundExceeded {
                what: "group order",
                value: order.min(usize::MAX as u128) as usize,
                bound: limit,
            });
        }
        let mut current = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(current.len() * level.orbit.len());
            for &x in &level.orbit {
                let u = level.transversal[x].as_ref().unwrap();
                for g in &current {
                    next.push(u.compose_unchecked(g));
                }
            }
            current = next;
        }
        current.sort();
        Ok(current)
    }
}

/// Orbits of the group generated by `gens` on `[0, degree)`.
pub fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for g in gens {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = out.len();
            out.push(Vec::new());
        }
        out[index_of_root[r]].push(x);
    }
    out
}

/// Explicit closure of the generated group; only for small groups.
pub fn closure(degree: usize, gens: &[Perm]) -> HashSet<Perm> {
    let mut seen = HashSet::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose_unchecked(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_perms;
    use proptest::prelude::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn orders() {
        let g =
            PermGroup::from_generators(3, &[p(3, &[&[1, 2]]), p(3, &[&[0, 2]]), p(3, &[&[0, 1]])]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(PermGroup::from_generators(4, &[]).unwrap().order(), 1);
        assert_eq!(
            PermGroup::from_generators(4, &[p(4, &[&[0, 1], &[2, 3]])])
                .unwrap()
                .order(),
            2
        );
        assert_eq!(PermGroup::from_generators(0, &[]).unwrap().order(), 1);
    }

    #[test]
    fn large_symmetric_group() {
        let n = 12;
        let g = PermGroup::from_generators(
            n,
            &[
                p(n, &[&[0, 1]]),
                Perm::from_images((1..n).chain([0]).collect()).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), (1..=12u128).product());
    }

    #[test]
    fn orbits_examples() {
        let g = PermGroup::from_generators(4, &[p(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2, 3]]);
        assert!(!g.is_transitive());
        let g = PermGroup::from_generators(3, &[p(3, &[&[1, 2]]), p(3, &[&[0, 2]])]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1, 2]]);
        assert_eq!(PermGroup::trivial(2).orbits(), vec![vec![0], vec![1]]);
        let c4 = PermGroup::from_generators(4, &[p(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert!(c4.is_transitive());
    }

    #[test]
    fn membership() {
        let a3 = PermGroup::from_generators(3, &[p(3, &[&[0, 1, 2]])]).unwrap();
        assert!(!a3.contains(&p(3, &[&[0, 1]])).unwrap());
        assert!(a3.contains(&p(3, &[&[0, 2, 1]])).unwrap());
        assert!(a3.contains(&Perm::identity(4)).is_err());
    }

    #[test]
    fn elements_enumerate_the_group() {
        let g = PermGroup::from_generators(4, &[p(4, &[&[0, 1, 2, 3]]), p(4, &[&[0, 2]])]).unwrap();
        let elems = g.elements(100).unwrap();
        assert_eq!(elems.len(), 8);
        assert_eq!(elems[0], Perm::identity(4));
        assert!(g.elements(4).is_err());
    }

    fn arb_gens(max_degree: usize) -> impl Strategy<Value = (usize, Vec<Perm>)> {
        (1..=max_degree).prop_flat_map(|n| {
            let perms = all_perms(n);
            let len = perms.len();
            (
                Just(n),
                proptest::collection::vec(0..len, 0..4)
                    .prop_map(move |idx| idx.into_iter().map(|i| perms[i].clone()).collect()),
            )
        })
    }

    proptest! {
        #[test]
        fn chain_order_matches_closure((n, gens) in arb_gens(6)) {
            let g = PermGroup::from_generators(n, &gens).unwrap();
            let brute = closure(n, &gens);
            prop_assert_eq!(g.order(), brute.len() as u128);
            for x in &brute {
                prop_assert!(g.contains(x).unwrap());
            }
        }

        #[test]
        fn products_of_generators_are_members((n, gens) in arb_gens(6)) {
            let g = PermGroup::from_generators(n, &gens).unwrap();
            let mut words = vec![Perm::identity(n)];
            for _ in 0..3 {
                let mut next = Vec::new();
                for w in &words {
                    for s in &gens {
                        next.push(s.compose_unchecked(w));
                    }
                }
                words.extend(next);
            }
            for w in &words {
                prop_assert!(g.contains(w).unwrap());
            }
        }

        #[test]
        fn orbits_refine_with_more_generators((n, gens) in arb_gens(6)) {
            let full = PermGroup::from_generators(n, &gens).unwrap().orbits();
            let fewer = &gens[..gens.len() / 2];
            let sub = PermGroup::from_generators(n, fewer).unwrap().orbits();
            for orbit in &sub {
                prop_assert!(full.iter().any(|o| orbit.iter().all(|x| o.contains(x))));
            }
        }
    }
}
