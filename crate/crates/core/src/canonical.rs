//! Canonical labeling, isomorphism testing and automorphism groups.
//!
//! Both searches work on ordered partitions of the elements, encoded as a
//! colour per element where the colour of a cell is the position of its
//! first element. Partitions are refined to a fixed point with respect to
//! the table before branching, and branching individualizes one element of
//! the first largest non-singleton cell.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::permgroup::{orbits_of, PermGroup};
use crate::rack::RackTable;

/// Byte-exact identity of an isomorphism class: the order as 4 big-endian
/// bytes followed by the entries of the minimal relabeled table, row-major,
/// 2 big-endian bytes each.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
}

impl CanonicalKey {
    fn from_table(n: usize, flat: &[usize]) -> Self {
        let mut bytes = Vec::with_capacity(4 + 2 * flat.len());
        bytes.extend_from_slice(&(n as u32).to_be_bytes());
        for &x in flat {
            bytes.extend_from_slice(&(x as u16).to_be_bytes());
        }
        CanonicalKey { bytes }
    }

    pub fn order(&self) -> usize {
        u32::from_be_bytes(self.bytes[..4].try_into().unwrap()) as usize
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    /// The canonical table encoded by the key.
    pub fn to_rack(&self) -> RackTable {
        let n = self.order();
        let data = self.bytes[4..]
            .chunks(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]) as usize)
            .collect();
        RackTable::from_flat_unchecked(n, data)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.hex())
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    /// Parses a hex key and checks that it encodes a canonical rack table.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownClass(format!("malformed key {s:?}"));
        let s = s.trim();
        let bytes = hex::decode(s).map_err(|_| bad())?;
        if bytes.len() < 4 {
            return Err(bad());
        }
        let n = u32::from_be_bytes(bytes[..4].try_into().unwrap()) as usize;
        if n > u16::MAX as usize || bytes.len() != 4 + 2 * n * n {
            return Err(bad());
        }
        let rows: Vec<Vec<usize>> = bytes[4..]
            .chunks(2 * n.max(1))
            .take(n)
            .map(|row| {
                row.chunks(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]]) as usize)
                    .collect()
            })
            .collect();
        let rack = RackTable::from_rows(&rows)?;
        let key = CanonicalKey { bytes };
        if canonical_key(&rack) != key {
            return Err(Error::UnknownClass(format!("{s} is not a canonical table")));
        }
        Ok(key)
    }
}

/// The canonical key, the labeling `λ` with `table = R.relabel(λ)`, and the
/// canonical table itself.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub labeling: Perm,
    pub table: RackTable,
}

type Colors = Vec<u32>;

/// Relabeling-invariant data per element.
fn initial_colors(r: &RackTable) -> Colors {
    let n = r.order();
    let sigma = r.canonical_automorphism();
    let mut sigma_len = vec![0u64; n];
    for c in sigma.cycles() {
        for &x in &c {
            sigma_len[x] = c.len() as u64;
        }
    }
    let mut orbit_size = vec![0u64; n];
    for o in orbits_of(n, &r.left_mults()) {
        for &x in &o {
            orbit_size[x] = o.len() as u64;
        }
    }
    let invariants: Vec<Vec<u64>> = (0..n)
        .map(|a| {
            let mut v = vec![
                u64::from(sigma.apply(a) != a),
                sigma_len[a],
                orbit_size[a],
                (0..n).filter(|&b| r.op(a, b) == b).count() as u64,
                (0..n).filter(|&b| r.op(b, a) == a).count() as u64,
            ];
            for (len, count) in r.left_mult(a).cycle_type().iter() {
                v.push(len);
                v.push(count as u64);
            }
            v
        })
        .collect();
    colors_from_keys(&vec![0; n], &invariants)
}

/// Splits every cell of `old` by `keys`, ordering the new cells by key.
fn colors_from_keys<K: Ord>(old: &[u32], keys: &[K]) -> Colors {
    let n = old.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| (old[x], &keys[x]).cmp(&(old[y], &keys[y])));
    let mut colors = vec![0u32; n];
    let mut start = 0;
    for pos in 0..n {
        let x = order[pos];
        if pos > 0 {
            let p = order[pos - 1];
            if (old[p], &keys[p]) != (old[x], &keys[x]) {
                start = pos;
            }
        }
        colors[x] = start as u32;
    }
    colors
}

fn cell_count(colors: &[u32]) -> usize {
    let mut seen = vec![false; colors.len()];
    colors
        .iter()
        .filter(|&&c| !std::mem::replace(&mut seen[c as usize], true))
        .count()
}

/// Refines to the coarsest equitable partition below `colors` and returns
/// a hash of the refinement trace, which is a relabeling invariant.
fn refine(r: &RackTable, mut colors: Colors) -> (Colors, u64) {
    let n = r.order();
    let mut hasher = DefaultHasher::new();
    let mut cells = cell_count(&colors);
    while cells < n {
        let keys: Vec<(u32, Vec<u64>)> = (0..n)
            .map(|x| {
                let nn = n as u64;
                let mut sig: Vec<u64> = (0..n)
                    .map(|y| {
                        let (cy, cxy, cyx) = (
                            colors[y] as u64,
                            colors[r.op(x, y)] as u64,
                            colors[r.op(y, x)] as u64,
                        );
                        (cy * nn + cxy) * nn + cyx
                    })
                    .collect();
                sig.sort_unstable();
                (colors[r.op(x, x)], sig)
            })
            .collect();
        let next = colors_from_keys(&colors, &keys);
        let mut summary: Vec<(u32, &(u32, Vec<u64>))> = (0..n).map(|x| (colors[x], &keys[x])).collect();
        summary.sort();
        summary.dedup();
        summary.hash(&mut hasher);
        let next_cells = cell_count(&next);
        colors = next;
        if next_cells == cells {
            break;
        }
        cells = next_cells;
    }
    let mut sorted = colors.clone();
    sorted.sort_unstable();
    sorted.hash(&mut hasher);
    (colors, hasher.finish())
}

fn individualize(colors: &[u32], x: usize) -> Colors {
    let c = colors[x];
    colors
        .iter()
        .enumerate()
        .map(|(y, &cy)| if cy == c && y != x { c + 1 } else { cy })
        .collect()
}

/// Elements of the first largest non-singleton cell, ascending, or `None`
/// when the partition is discrete.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let n = colors.len();
    let mut size = vec![0usize; n];
    for &c in colors {
        size[c as usize] += 1;
    }
    let (best, &largest) = size
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))?;
    if largest < 2 {
        return None;
    }
    Some((0..n).filter(|&x| colors[x] as usize == best).collect())
}

fn labeling(colors: &[u32]) -> Perm {
    Perm::from_images_unchecked(colors.iter().map(|&c| c as usize).collect())
}

struct Leaf {
    table: RackTable,
    labeling: Perm,
    path: Vec<usize>,
}

struct CanonSearch<'a> {
    rack: &'a RackTable,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Perm>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl CanonSearch<'_> {
    /// Returns `Some(depth)` to abandon every node deeper than `depth`.
    fn search(&mut self, colors: Colors, path: &mut Vec<usize>) -> Option<usize> {
        let (colors, _) = refine(self.rack, colors);
        let Some(cell) = target_cell(&colors) else {
            return self.leaf(&colors, path);
        };
        let mut explored: Vec<usize> = Vec::new();
        for w in cell {
            if !explored.is_empty() && self.equivalent_to_explored(w, &explored, path) {
                continue;
            }
            explored.push(w);
            path.push(w);
            let jump = self.search(individualize(&colors, w), path);
            path.pop();
            if let Some(depth) = jump {
                if depth < path.len() {
                    return Some(depth);
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, w: usize, explored: &[usize], path: &[usize]) -> bool {
        let gens: Vec<Perm> = self
            .automorphisms
            .iter()
            .filter(|g| path.iter().all(|&v| g.apply(v) == v))
            .cloned()
            .collect();
        if gens.is_empty() {
            return false;
        }
        orbits_of(self.rack.order(), &gens)
            .iter()
            .find(|o| o.contains(&w))
            .is_some_and(|o| explored.iter().any(|e| o.contains(e)))
    }

    fn leaf(&mut self, colors: &[u32], path: &[usize]) -> Option<usize> {
        let labeling = labeling(colors);
        let table = self.rack.relabel(&labeling);
        let leaf = Leaf {
            table,
            labeling,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                table: leaf.table.clone(),
                labeling: leaf.labeling.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        let best = self.best.as_ref().unwrap();
        for reference in [first, best] {
            if reference.table == leaf.table {
                let g = leaf.labeling.inverse().compose_unchecked(&reference.labeling);
                let depth = common_prefix(&reference.path, &leaf.path);
                self.automorphisms.push(g);
                return Some(depth);
            }
        }
        if leaf.table.flat() < best.table.flat() {
            self.best = Some(leaf);
        }
        None
    }
}

/// Canonical form by partition refinement and individualization, taking the
/// lexicographically least relabeled table over all explored leaves.
pub fn canonical_form(rack: &RackTable) -> CanonicalForm {
    let n = rack.order();
    if n == 0 {
        return CanonicalForm {
            key: CanonicalKey::from_table(0, &[]),
            labeling: Perm::identity(0),
            table: RackTable::empty(),
        };
    }
    let mut search = CanonSearch {
        rack,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    search.search(initial_colors(rack), &mut Vec::new());
    let best = search.best.expect("search reaches a leaf");
    CanonicalForm {
        key: CanonicalKey::from_table(n, best.table.flat()),
        labeling: best.labeling,
        table: best.table,
    }
}

pub fn canonical_key(rack: &RackTable) -> CanonicalKey {
    canonical_form(rack).key
}

pub fn are_isomorphic(a: &RackTable, b: &RackTable) -> bool {
    a.order() == b.order() && canonical_key(a) == canonical_key(b)
}

/// A permutation `p` with `p(x ⊳ y) = p(x) ⊳ p(y)` from `a` to `b`.
pub fn find_isomorphism(a: &RackTable, b: &RackTable) -> Option<Perm> {
    if a.order() != b.order() {
        return None;
    }
    let fa = canonical_form(a);
    let fb = canonical_form(b);
    if fa.key != fb.key {
        return None;
    }
    let p = fb.labeling.inverse().compose_unchecked(&fa.labeling);
    debug_assert!(a.is_morphism_to(b, p.images()));
    Some(p)
}

/// Searches for an isomorphism extending the correspondence of colours.
fn extend_iso(a: &RackTable, ca: Colors, b: &RackTable, cb: Colors) -> Option<Perm> {
    let (ca, ta) = refine(a, ca);
    let (cb, tb) = refine(b, cb);
    if ta != tb {
        return None;
    }
    match target_cell(&ca) {
        None => {
            let mut by_color = vec![0; b.order()];
            for (y, &c) in cb.iter().enumerate() {
                by_color[c as usize] = y;
            }
            let images: Vec<usize> = ca.iter().map(|&c| by_color[c as usize]).collect();
            a.is_morphism_to(b, &images)
                .then(|| Perm::from_images_unchecked(images))
        }
        Some(cell) => {
            let x = cell[0];
            let c = ca[x];
            let ca = individualize(&ca, x);
            (0..b.order())
                .filter(|&y| cb[y] == c)
                .find_map(|y| extend_iso(a, ca.clone(), b, individualize(&cb, y)))
        }
    }
}

pub fn is_automorphism(rack: &RackTable, p: &Perm) -> bool {
    p.degree() == rack.order() && rack.is_morphism_to(rack, p.images())
}

/// `Aut(R)` as a permutation group, built level by level along the base
/// `0, 1, …, n−1` from coset representatives found by search.
pub fn automorphism_group(rack: &RackTable) -> Result<PermGroup> {
    let n = rack.order();
    if n == 0 {
        return Err(Error::EmptyRack("automorphism_group"));
    }
    let init = initial_colors(rack);
    let mut prefixes = Vec::with_capacity(n);
    let mut colors = refine(rack, init).0;
    for i in 0..n {
        prefixes.push(colors.clone());
        colors = refine(rack, individualize(&colors, i)).0;
    }
    let mut gens: Vec<Perm> = Vec::new();
    for i in (0..n).rev() {
        let base = &prefixes[i];
        let fixed = individualize(base, i);
        for j in 0..n {
            if j == i || base[j] != base[i] {
                continue;
            }
            if orbits_of(n, &gens)
                .iter()
                .any(|o| o.contains(&i) && o.contains(&j))
            {
                continue;
            }
            if let Some(g) = extend_iso(rack, fixed.clone(), rack, individualize(base, j)) {
                debug_assert!((0..i).all(|k| g.apply(k) == k) && g.apply(i) == j);
                gens.push(g);
            }
        }
    }
    PermGroup::from_generators(n, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;
    use crate::perm::all_perms;

    fn transposition_quandle() -> RackTable {
        let s3 = FinGroup::symmetric(3);
        let class: Vec<usize> = (0..6)
            .filter(|&g| {
                s3.perm_of(g).unwrap().cycle_type()
                    == crate::cycles::CycleVector::from_pairs([(1, 1), (2, 1)])
            })
            .collect();
        RackTable::conjugation_class_quandle(&s3, &class).unwrap()
    }

    /// Brute-force isomorphism test over all bijections.
    fn brute_iso(a: &RackTable, b: &RackTable) -> bool {
        a.order() == b.order()
            && all_perms(a.order())
                .iter()
                .any(|p| a.is_morphism_to(b, p.images()))
    }

    #[test]
    fn key_examples() {
        assert_eq!(
            canonical_key(&RackTable::dihedral(3)),
            canonical_key(&transposition_quandle())
        );
        assert_ne!(
            canonical_key(&RackTable::trivial(2)),
            canonical_key(&RackTable::cycle(2))
        );
        assert_eq!(canonical_key(&RackTable::empty()).hex(), "00000000");
        assert_eq!(canonical_key(&RackTable::singleton()).hex(), "000000010000");
    }

    #[test]
    fn key_is_stable_under_all_relabelings() {
        let racks = [
            RackTable::dihedral(4),
            RackTable::cycle(2)
                .disjoint_union(&RackTable::singleton())
                .disjoint_union(&RackTable::singleton()),
            RackTable::tetrahedral(),
            RackTable::permutation_rack(&Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()),
            RackTable::cycle(2).disjoint_union(&RackTable::cycle(2)),
        ];
        for r in &racks {
            let k = canonical_key(r);
            for p in all_perms(r.order()) {
                let s = r.relabel(&p);
                assert_eq!(canonical_key(&s), k);
                let iso = find_isomorphism(r, &s).unwrap();
                assert!(r.is_morphism_to(&s, iso.images()));
            }
        }
    }

    #[test]
    fn key_round_trips() {
        let r = RackTable::dihedral(5).product(&RackTable::cycle(2));
        let f = canonical_form(&r);
        assert_eq!(f.key.to_rack(), f.table);
        assert_eq!(r.relabel(&f.labeling), f.table);
        assert_eq!(canonical_key(&f.table), f.key);
        assert_eq!(f.key.hex().parse::<CanonicalKey>().unwrap(), f.key);
        assert!("0000000100".parse::<CanonicalKey>().is_err());
        // a valid but non-canonical table is rejected
        let nc = RackTable::cycle(2).disjoint_union(&RackTable::singleton());
        let raw = CanonicalKey::from_table(3, nc.flat());
        if raw != canonical_key(&nc) {
            assert!(raw.hex().parse::<CanonicalKey>().is_err());
        }
    }

    #[test]
    fn isomorphism_examples() {
        let pr = RackTable::permutation_rack(&Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap());
        let c2c2 = RackTable::cycle(2).disjoint_union(&RackTable::cycle(2));
        assert!(!are_isomorphic(&pr, &c2c2));
        assert!(!brute_iso(&pr, &c2c2));
        assert!(find_isomorphism(&pr, &c2c2).is_none());
        assert!(!are_isomorphic(&RackTable::dihedral(3), &RackTable::trivial(4)));
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_group(&RackTable::trivial(3)).unwrap().order(), 6);
        let pr = RackTable::permutation_rack(&Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap());
        assert_eq!(automorphism_group(&pr).unwrap().order(), 8);
        assert_eq!(automorphism_group(&RackTable::dihedral(3)).unwrap().order(), 6);
        assert!(automorphism_group(&RackTable::empty()).is_err());
        assert_eq!(
            automorphism_group(&RackTable::trivial(12)).unwrap().order(),
            479_001_600
        );
    }

    #[test]
    fn permutation_rack_aut_is_centralizer() {
        for n in 1..=5 {
            for p in all_perms(n) {
                let r = RackTable::permutation_rack(&p);
                let aut = automorphism_group(&r).unwrap();
                assert_eq!(aut.order(), p.centralizer_order_in_sym(), "{p}");
                for g in aut.generators() {
                    assert!(is_automorphism(&r, g));
                }
            }
        }
    }

    #[test]
    fn aut_matches_brute_force_and_contains_inn() {
        let racks = [
            RackTable::dihedral(4),
            RackTable::dihedral(5),
            RackTable::tetrahedral(),
            RackTable::cycle(3).disjoint_union(&RackTable::dihedral(3)),
            RackTable::cycle(2).product(&RackTable::dihedral(3)),
        ];
        for r in &racks {
            let aut = automorphism_group(r).unwrap();
            let brute = all_perms(r.order())
                .iter()
                .filter(|p| is_automorphism(r, p))
                .count() as u128;
            assert_eq!(aut.order(), brute, "{r:?}");
            for a in 0..r.order() {
                assert!(aut.contains(&r.left_mult(a)).unwrap());
            }
        }
    }

    #[test]
    fn key_agrees_with_brute_force_iso_on_small_racks() {
        let racks = [
            RackTable::trivial(3),
            RackTable::cycle(3),
            RackTable::dihedral(3),
            RackTable::cycle(2).disjoint_union(&RackTable::singleton()),
            RackTable::permutation_rack(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()),
        ];
        for a in &racks {
            for b in &racks {
                assert_eq!(are_isomorphic(a, b), brute_iso(a, b));
            }
        }
    }
}
