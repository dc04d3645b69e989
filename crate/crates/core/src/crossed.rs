//! Coset racks, crossed G-sets and the passage between crossed actions and
//! racks.

use serde::Serialize;

use crate::canonical::automorphism_group;
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::perm::Perm;
use crate::rack::RackTable;

/// Largest automorphism group [`rack_to_crossed`] will tabulate.
pub const MAX_CROSSED_GROUP_ORDER: usize = 1024;

/// A `G`-set `X` with an equivariant crossing `δ: X → G`,
/// `δ(g·x) = g·δ(x)·g⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossedGSet {
    group: FinGroup,
    x_size: usize,
    action: Vec<Perm>,
    delta: Vec<usize>,
}

/// A crossed set whose group is part of the data; compared up to
/// equivalence.
pub type CrossedAction = CrossedGSet;

impl CrossedGSet {
    /// Checks that `action` is a homomorphism `G → Sym(X)` and that `δ` is
    /// equivariant.
    pub fn new(group: FinGroup, action: Vec<Perm>, delta: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCrossed(m));
        let x_size = delta.len();
        if action.len() != group.order() {
            return bad(format!(
                "{} action permutations for a group of order {}",
                action.len(),
                group.order()
            ));
        }
        if let Some(g) = action.iter().position(|p| p.degree() != x_size) {
            return bad(format!("action of {g} has the wrong degree"));
        }
        if !action[0].is_identity() {
            return bad("the identity does not act trivially".into());
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if action[gh] != action[g].compose_unchecked(&action[h]) {
                    return bad(format!("action is not multiplicative at ({g}, {h})"));
                }
            }
        }
        if let Some(x) = delta.iter().position(|&d| d >= group.order()) {
            return bad(format!("crossing of {x} is not a group element"));
        }
        for g in 0..group.order() {
            for x in 0..x_size {
                if delta[action[g].apply(x)] != group.conj(g, delta[x]) {
                    return bad(format!("crossing is not equivariant at g = {g}, x = {x}"));
                }
            }
        }
        Ok(CrossedGSet {
            group,
            x_size,
            action,
            delta,
        })
    }

    /// The empty crossed set over the trivial group.
    pub fn empty() -> Self {
        CrossedGSet {
            group: FinGroup::cyclic(1),
            x_size: 0,
            action: vec![Perm::identity(0)],
            delta: Vec::new(),
        }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn action(&self, g: usize) -> &Perm {
        &self.action[g]
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }
}

/// The rack `αH ⊳ βH = αμα⁻¹βH` on the left cosets of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetRack {
    pub rack: RackTable,
    /// Cosets ordered by least element; coset `i` is element `i`.
    pub cosets: Vec<Vec<usize>>,
    /// Whether `H ≤ C_G(μ)`.
    pub centralizes: bool,
}

/// Builds the coset rack when `[h, μ] = μ⁻¹hμh⁻¹` lies in the normal core
/// of `H` for every `h ∈ H`.
pub fn coset_rack(group: &FinGroup, h: &[usize], mu: usize) -> Result<CosetRack> {
    group.check(mu)?;
    for &x in h {
        group.check(x)?;
    }
    let h = group.require_subgroup(h)?;
    let core = group.normal_core(&h);
    let mu_inv = group.inv(mu);
    for &x in &h {
        let commutator = group.mul(group.mul(mu_inv, x), group.mul(mu, group.inv(x)));
        if core.binary_search(&commutator).is_err() {
            return Err(Error::CosetCondition { h: x, commutator });
        }
    }
    let cosets = group.left_cosets(&h);
    let coset_of = coset_index(group.order(), &cosets);
    let n = cosets.len();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let alpha = cosets[i][0];
            let t = group.conj(alpha, mu);
            (0..n).map(|j| coset_of[group.mul(t, cosets[j][0])]).collect()
        })
        .collect();
    let rack = RackTable::from_rows(&rows)?;
    let centralizes = h.iter().all(|&x| group.mul(x, mu) == group.mul(mu, x));
    Ok(CosetRack {
        rack,
        cosets,
        centralizes,
    })
}

fn coset_index(order: usize, cosets: &[Vec<usize>]) -> Vec<usize> {
    let mut coset_of = vec![0; order];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of[x] = i;
        }
    }
    coset_of
}

/// `[G/H, a]`: left translation on `G/H` with `δ(αH) = αaα⁻¹`.
pub fn transitive_crossed(group: &FinGroup, h: &[usize], a: usize) -> Result<CrossedGSet> {
    group.check(a)?;
    for &x in h {
        group.check(x)?;
    }
    let h = group.require_subgroup(h)?;
    if let Some(&x) = h.iter().find(|&&x| group.mul(x, a) != group.mul(a, x)) {
        return Err(Error::NotInCentralizer { a, h: x });
    }
    let cosets = group.left_cosets(&h);
    let coset_of = coset_index(group.order(), &cosets);
    let action = (0..group.order())
        .map(|g| {
            let images = cosets.iter().map(|c| coset_of[group.mul(g, c[0])]).collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    let delta = cosets.iter().map(|c| group.conj(c[0], a)).collect();
    CrossedGSet::new(group.clone(), action, delta)
}

/// The least `g` with `gHg⁻¹ = K` and `gag⁻¹ = b`.
pub fn conjugating_element(
    group: &FinGroup,
    (h, a): (&[usize], usize),
    (k, b): (&[usize], usize),
) -> Option<usize> {
    let mut k = k.to_vec();
    k.sort_unstable();
    k.dedup();
    (0..group.order()).find(|&g| {
        if group.conj(g, a) != b {
            return false;
        }
        let mut conj: Vec<usize> = h.iter().map(|&x| group.conj(g, x)).collect();
        conj.sort_unstable();
        conj.dedup();
        conj == k
    })
}

/// Whether `[G/H, a] ≅ [G/K, b]`.
pub fn transitive_crossed_iso(group: &FinGroup, first: (&[usize], usize), second: (&[usize], usize)) -> bool {
    conjugating_element(group, first, second).is_some()
}

/// `a ⊳ b = δ(a)·b`.
pub fn crossed_to_rack(x: &CrossedGSet) -> Result<RackTable> {
    let rows: Vec<Vec<usize>> = x.delta.iter().map(|&d| x.action[d].images().to_vec()).collect();
    RackTable::from_rows(&rows)
}

fn crossed_over(rack: &RackTable, elements: Vec<Perm>) -> Result<CrossedAction> {
    let group = FinGroup::from_perm_list(elements.clone())?;
    let delta = rack
        .left_mults()
        .iter()
        .map(|l| {
            group
                .index_of_perm(l)
                .ok_or_else(|| Error::InvalidCrossed("left multiplication outside the group".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    CrossedGSet::new(group, elements, delta)
}

fn sorted_elements(mut elements: Vec<Perm>) -> Vec<Perm> {
    elements.sort_by(|a, b| a.images().cmp(b.images()));
    elements
}

/// `δ: R → Aut(R)`, `a ↦ ℓ_a`, with `Aut(R)` tabulated over its sorted
/// elements.
pub fn rack_to_crossed(rack: &RackTable) -> Result<CrossedAction> {
    let aut = automorphism_group(rack)?;
    crossed_over(rack, sorted_elements(aut.elements(MAX_CROSSED_GROUP_ORDER)?))
}

/// The same construction over `Inn(R)`.
pub fn rack_to_crossed_inner(rack: &RackTable) -> Result<CrossedAction> {
    let inn = crate::structure::inner_group(rack)?;
    crossed_over(rack, sorted_elements(inn.elements(MAX_CROSSED_GROUP_ORDER)?))
}

/// The inclusion of group elements between two crossed actions whose groups
/// are permutation groups with `small ≤ large`.
pub fn permutation_inclusion(small: &CrossedAction, large: &CrossedAction) -> Option<Vec<usize>> {
    (0..small.group.order())
        .map(|g| small.group.perm_of(g).and_then(|p| large.group.index_of_perm(p)))
        .collect()
}

/// The homomorphism `G → Aut(X)` through which `X` acts, with its target
/// crossed action `rack_to_crossed(crossed_to_rack(X))`.
pub fn action_homomorphism(x: &CrossedAction) -> Result<(Vec<usize>, CrossedAction)> {
    let y = rack_to_crossed(&crossed_to_rack(x)?)?;
    let f = (0..x.group.order())
        .map(|g| {
            y.group
                .index_of_perm(&x.action[g])
                .ok_or_else(|| Error::InvalidCrossed(format!("element {g} does not act by automorphisms")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((f, y))
}

/// Whether `(f, w): X → Y` is an equivalence: `f` a homomorphism, `w` a
/// bijection, `w(g·x) = f(g)·w(x)` and `f(δ(x)) = ε(w(x))`.
pub fn is_equivalence(f: &[usize], w: &[usize], x: &CrossedAction, y: &CrossedAction) -> bool {
    if !x.group.is_homomorphism_to(&y.group, f) {
        return false;
    }
    if w.len() != x.x_size || x.x_size != y.x_size {
        return false;
    }
    let mut hit = vec![false; y.x_size];
    for &v in w {
        if v >= y.x_size || std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    (0..x.group.order()).all(|g| (0..x.x_size).all(|p| w[x.action[g].apply(p)] == y.action[f[g]].apply(w[p])))
        && (0..x.x_size).all(|p| f[x.delta[p]] == y.delta[w[p]])
}

/// The identity equivalence on `x`.
pub fn identity_equivalence(x: &CrossedAction) -> (Vec<usize>, Vec<usize>) {
    ((0..x.group.order()).collect(), (0..x.x_size).collect())
}

/// `X ⊔ Y` over `G × H` with crossings `(δ(x), e)` and `(e, ε(y))`.
pub fn crossed_sum(x: &CrossedAction, y: &CrossedAction) -> Result<CrossedAction> {
    let group = x.group.direct_product(&y.group);
    let hn = y.group.order();
    let action = (0..group.order())
        .map(|gh| {
            let (g, h) = (gh / hn, gh % hn);
            let images = x.action[g]
                .images()
                .iter()
                .copied()
                .chain(y.action[h].images().iter().map(|&v| v + x.x_size))
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    let delta = x
        .delta
        .iter()
        .map(|&d| d * hn)
        .chain(y.delta.iter().copied())
        .collect();
    CrossedGSet::new(group, action, delta)
}

/// `X × Y` over `G × H` with crossing `(δ(x), ε(y))`.
pub fn crossed_product(x: &CrossedAction, y: &CrossedAction) -> Result<CrossedAction> {
    let group = x.group.direct_product(&y.group);
    let hn = y.group.order();
    let ys = y.x_size;
    let action = (0..group.order())
        .map(|gh| {
            let (g, h) = (gh / hn, gh % hn);
            let images = (0..x.x_size * ys)
                .map(|p| x.action[g].apply(p / ys) * ys + y.action[h].apply(p % ys))
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    let delta = (0..x.x_size * ys)
        .map(|p| x.delta[p / ys] * hn + y.delta[p % ys])
        .collect();
    CrossedGSet::new(group, action, delta)
}

fn require_same_group(x: &CrossedGSet, y: &CrossedGSet) -> Result<()> {
    if x.group.cayley() == y.group.cayley() {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `X ⊔ Y` over a common group, each part keeping its crossing.
pub fn crossed_union(x: &CrossedGSet, y: &CrossedGSet) -> Result<CrossedGSet> {
    require_same_group(x, y)?;
    let action = (0..x.group.order())
        .map(|g| {
            let images = x.action[g]
                .images()
                .iter()
                .copied()
                .chain(y.action[g].images().iter().map(|&v| v + x.x_size))
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    let delta = x.delta.iter().chain(&y.delta).copied().collect();
    CrossedGSet::new(x.group.clone(), action, delta)
}

/// `X × Y` over a common group with the diagonal action and crossing
/// `δ(x)·ε(y)`.
pub fn diagonal_product_fixed_g(x: &CrossedGSet, y: &CrossedGSet) -> Result<CrossedGSet> {
    require_same_group(x, y)?;
    let ys = y.x_size;
    let action = (0..x.group.order())
        .map(|g| {
            let images = (0..x.x_size * ys)
                .map(|p| x.action[g].apply(p / ys) * ys + y.action[g].apply(p % ys))
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    let delta = (0..x.x_size * ys)
        .map(|p| x.group.mul(x.delta[p / ys], y.delta[p % ys]))
        .collect();
    CrossedGSet::new(x.group.clone(), action, delta)
}
