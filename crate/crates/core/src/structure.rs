//! Orbits, adjectives, maximal connected subracks and decomposition trees.

use serde::Serialize;

use crate::canonical::automorphism_group;
use crate::cycles::CycleVector;
use crate::error::{Error, Result};
use crate::permgroup::{orbits_of, PermGroup};
use crate::rack::{RackTable, Subset};

/// Default bound on the number of orbits for ideal enumeration.
pub const DEFAULT_MAX_ORBITS: usize = 12;

/// The group generated by all left multiplications.
pub fn inner_group(rack: &RackTable) -> Result<PermGroup> {
    if rack.is_empty() {
        return Err(Error::EmptyRack("inner_group"));
    }
    PermGroup::from_generators(rack.order(), &rack.left_mults())
}

/// Orbits of the inner group, ordered by least element.
pub fn inn_orbits(rack: &RackTable) -> Vec<Subset> {
    orbits_of(rack.order(), &rack.left_mults())
        .into_iter()
        .map(Subset::new)
        .collect()
}

/// A single orbit of the inner group. The empty rack is not connected.
pub fn is_connected(rack: &RackTable) -> bool {
    !rack.is_empty() && inn_orbits(rack).len() == 1
}

/// A single orbit of the automorphism group. The empty rack is not
/// homogeneous.
pub fn is_homogeneous(rack: &RackTable) -> bool {
    match automorphism_group(rack) {
        Ok(aut) => aut.is_transitive(),
        Err(_) => false,
    }
}

/// Classes of the equivalence generated by `a ∼ b` when `a ⊳ b ≠ b` or
/// `b ⊳ a ≠ a`, ordered by least element.
pub fn irreducible_components(rack: &RackTable) -> Vec<Subset> {
    let n = rack.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..n {
        for b in 0..n {
            if rack.op(a, b) != b || rack.op(b, a) != a {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(x);
    }
    classes.into_iter().map(Subset::new).collect()
}

/// Not a disjoint union of two non-empty subracks acting trivially on each
/// other. The empty rack is not irreducible.
pub fn is_irreducible(rack: &RackTable) -> bool {
    !rack.is_empty() && irreducible_components(rack).len() == 1
}

/// Non-empty with no decomposition into two non-empty ideals.
pub fn is_indecomposable(rack: &RackTable) -> Result<bool> {
    Ok(!rack.is_empty() && enumerate_ideals(rack)?.len() == 2)
}

/// The node set, and the orbits of its restriction when that is not
/// connected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTree {
    pub node: Subset,
    pub children: Vec<DecompositionTree>,
}

impl DecompositionTree {
    pub fn depth(&self) -> usize {
        self.children.iter().map(|c| 1 + c.depth()).max().unwrap_or(0)
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<Subset> {
        if self.children.is_empty() {
            return vec![self.node.clone()];
        }
        self.children.iter().flat_map(|c| c.leaves()).collect()
    }
}

fn tree_of(rack: &RackTable, node: Subset) -> DecompositionTree {
    let sub = rack.restrict_unchecked(node.indices());
    let orbits = inn_orbits(&sub);
    if orbits.len() <= 1 {
        return DecompositionTree {
            node,
            children: Vec::new(),
        };
    }
    let children = orbits
        .into_iter()
        .map(|o| {
            let global = Subset::new(o.indices().iter().map(|&i| node.indices()[i]).collect());
            tree_of(rack, global)
        })
        .collect();
    DecompositionTree { node, children }
}

/// Recursive refinement of the rack into orbits of restrictions, processed
/// by least element.
pub fn decomposition_tree(rack: &RackTable) -> DecompositionTree {
    tree_of(rack, Subset::full(rack.order()))
}

/// Height of the decomposition tree; 0 for connected racks and order ≤ 1.
pub fn depth(rack: &RackTable) -> usize {
    decomposition_tree(rack).depth()
}

/// The maximal connected subracks, sorted by least element.
pub fn pi_decomposition(rack: &RackTable) -> Vec<Subset> {
    if rack.is_empty() {
        return Vec::new();
    }
    let mut leaves = decomposition_tree(rack).leaves();
    leaves.sort_by_key(|s| s.indices()[0]);
    leaves
}

/// All ideals, i.e. unions of inner orbits, ordered by their orbit mask.
pub fn enumerate_ideals(rack: &RackTable) -> Result<Vec<Subset>> {
    enumerate_ideals_bounded(rack, DEFAULT_MAX_ORBITS)
}

pub fn enumerate_ideals_bounded(rack: &RackTable, max_orbits: usize) -> Result<Vec<Subset>> {
    let orbits = inn_orbits(rack);
    if orbits.len() > max_orbits {
        return Err(Error::BoundExceeded {
            what: "orbit count",
            value: orbits.len(),
            bound: max_orbits,
        });
    }
    Ok((0u64..1 << orbits.len())
        .map(|mask| {
            Subset::new(
                orbits
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .flat_map(|(_, o)| o.indices().iter().copied())
                    .collect(),
            )
        })
        .collect())
}

/// Unordered pairs of complementary non-empty ideals; the first part
/// contains element 0.
pub fn enumerate_decompositions(rack: &RackTable) -> Result<Vec<(Subset, Subset)>> {
    let n = rack.order();
    Ok(enumerate_ideals(rack)?
        .into_iter()
        .filter(|s| s.contains(0) && s.len() < n)
        .map(|s| {
            let t = s.complement(n);
            (s, t)
        })
        .collect())
}

/// Cycle type of any left multiplication of a homogeneous rack.
pub fn profile(rack: &RackTable) -> Result<CycleVector> {
    if rack.is_empty() {
        return Err(Error::EmptyRack("profile"));
    }
    if !is_homogeneous(rack) {
        return Err(Error::NotHomogeneous);
    }
    let p = rack.left_mult(0).cycle_type();
    debug_assert!((0..rack.order()).all(|a| rack.left_mult(a).cycle_type() == p));
    Ok(p)
}

/// Summary of the structural invariants of a rack.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub order: usize,
    pub quandle: bool,
    pub connected: bool,
    pub homogeneous: bool,
    pub irreducible: bool,
    pub orbit_sizes: Vec<usize>,
    pub depth: usize,
    pub profile: Option<String>,
    pub sigma_cycle_type: String,
}

pub fn analyze(rack: &RackTable) -> Analysis {
    let homogeneous = is_homogeneous(rack);
    Analysis {
        order: rack.order(),
        quandle: rack.is_quandle(),
        connected: is_connected(rack),
        homogeneous,
        irreducible: is_irreducible(rack),
        orbit_sizes: inn_orbits(rack).iter().map(Subset::len).collect(),
        depth: depth(rack),
        profile: homogeneous.then(|| rack.left_mult(0).cycle_type().cycle_type_string()),
        sigma_cycle_type: rack.canonical_automorphism().cycle_type().cycle_type_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;
    use crate::perm::Perm;

    fn perm_rack(n: usize, cycles: &[&[usize]]) -> RackTable {
        RackTable::permutation_rack(&Perm::from_cycles(n, cycles).unwrap())
    }

    #[test]
    fn inner_group_orders() {
        assert_eq!(inner_group(&RackTable::dihedral(3)).unwrap().order(), 6);
        assert_eq!(inner_group(&RackTable::trivial(4)).unwrap().order(), 1);
        assert!(inner_group(&RackTable::empty()).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&RackTable::dihedral(3)));
        let orbits: Vec<Vec<usize>> = inn_orbits(&RackTable::dihedral(4))
            .iter()
            .map(|s| s.indices().to_vec())
            .collect();
        assert_eq!(orbits, vec![vec![0, 2], vec![1, 3]]);
        assert!(!is_connected(&perm_rack(4, &[&[0, 1], &[2, 3]])));
        assert!(!is_connected(&RackTable::empty()));
        assert!(is_connected(&RackTable::singleton()));
    }

    #[test]
    fn adjective_examples() {
        // (R, π) with π = (0 1)(2 3)
        let r = perm_rack(4, &[&[0, 1], &[2, 3]]);
        assert!(!is_connected(&r) && is_homogeneous(&r) && is_irreducible(&r));
        assert!(!is_indecomposable(&r).unwrap());
        // (R, π) with π = (0 1) on three points
        let r = perm_rack(3, &[&[0, 1]]);
        assert!(!is_connected(&r) && !is_homogeneous(&r) && is_irreducible(&r));
        // trivial quandles
        let t = RackTable::trivial(3);
        assert!(!is_connected(&t) && is_homogeneous(&t) && !is_irreducible(&t));
        assert_eq!(irreducible_components(&RackTable::trivial(2)).len(), 2);
        // a 2-cycle next to a fixed point is neither irreducible nor homogeneous
        let u = RackTable::cycle(2).disjoint_union(&RackTable::singleton());
        assert!(!is_irreducible(&u) && !is_homogeneous(&u));
        let e = RackTable::empty();
        assert!(!is_homogeneous(&e) && !is_irreducible(&e) && !is_indecomposable(&e).unwrap());
        assert_eq!(depth(&e), 0);
    }

    #[test]
    fn pi_decomposition_examples() {
        let s3 = RackTable::conjugation_quandle(&FinGroup::symmetric(3));
        let mut sizes: Vec<usize> = pi_decomposition(&s3).iter().map(Subset::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 1, 3]);
        assert_eq!(pi_decomposition(&RackTable::dihedral(4)).len(), 4);
        assert_eq!(pi_decomposition(&RackTable::dihedral(3)).len(), 1);
        assert!(pi_decomposition(&RackTable::empty()).is_empty());
    }

    #[test]
    fn depth_examples() {
        assert_eq!(depth(&RackTable::dihedral(4)), 2);
        assert_eq!(depth(&RackTable::dihedral(3)), 0);
        assert_eq!(depth(&RackTable::dihedral(8)), 3);
        assert_eq!(depth(&RackTable::dihedral(16)), 4);
        assert_eq!(depth(&RackTable::singleton()), 0);
    }

    #[test]
    fn ideals_and_decompositions() {
        let ideals: Vec<Vec<usize>> = enumerate_ideals(&RackTable::dihedral(4))
            .unwrap()
            .iter()
            .map(|s| s.indices().to_vec())
            .collect();
        assert_eq!(ideals, vec![vec![], vec![0, 2], vec![1, 3], vec![0, 1, 2, 3]]);
        assert_eq!(
            enumerate_decompositions(&RackTable::dihedral(4)).unwrap().len(),
            1
        );
        assert!(enumerate_decompositions(&RackTable::dihedral(3))
            .unwrap()
            .is_empty());
        assert_eq!(enumerate_ideals(&RackTable::dihedral(3)).unwrap().len(), 2);
        assert_eq!(enumerate_decompositions(&RackTable::trivial(2)).unwrap().len(), 1);
        assert!(enumerate_ideals(&RackTable::trivial(13)).is_err());
    }

    #[test]
    fn profile_examples() {
        assert_eq!(
            profile(&RackTable::dihedral(3)).unwrap(),
            CycleVector::from_pairs([(1, 1), (2, 1)])
        );
        assert_eq!(profile(&RackTable::trivial(4)).unwrap(), CycleVector::term(4, 1));
        let d3 = RackTable::dihedral(3);
        let p = profile(&d3).unwrap();
        assert_eq!(profile(&d3.product(&d3)).unwrap(), p.mul(&p));
        assert_eq!(p.mul(&p), CycleVector::from_pairs([(1, 1), (2, 4)]));
        assert!(matches!(
            profile(&perm_rack(3, &[&[0, 1]])),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn analysis_report() {
        let a = analyze(&RackTable::dihedral(4));
        assert_eq!(a.orbit_sizes, vec![2, 2]);
        assert_eq!(a.depth, 2);
        assert!(a.quandle && !a.connected && a.homogeneous);
        assert_eq!(a.profile.as_deref(), Some("1^2 2^1"));
        assert_eq!(a.sigma_cycle_type, "1^4");
    }
}
