//! Isomorph-free generation of racks and quandles of a fixed order.
//!
//! Rows `ℓ_a` are chosen one at a time from `Sym(n)`. Whenever rows `a`
//! and `b` are both known the row of `a ⊳ b` is forced to be
//! `ℓ_a ℓ_b ℓ_a⁻¹`; forced rows are propagated from a worklist and undone
//! from a trail on backtrack. Row 0 is fixed to one representative per
//! conjugacy class of permutations under relabelings fixing 0, and
//! complete tables are deduplicated by canonical key.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::burnside::ClassRegistry;
use crate::canonical::{canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::perm::{all_perms, Perm};
use crate::rack::RackTable;
use crate::structure::is_connected;

/// Which racks to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationFilter {
    pub order: usize,
    pub quandle_only: bool,
    pub connected_only: bool,
}

impl EnumerationFilter {
    pub fn racks(order: usize) -> Self {
        EnumerationFilter {
            order,
            quandle_only: false,
            connected_only: false,
        }
    }

    pub fn quandles(order: usize) -> Self {
        EnumerationFilter {
            quandle_only: true,
            ..Self::racks(order)
        }
    }

    pub fn connected_quandles(order: usize) -> Self {
        EnumerationFilter {
            connected_only: true,
            ..Self::quandles(order)
        }
    }

    pub fn connected_racks(order: usize) -> Self {
        EnumerationFilter {
            connected_only: true,
            ..Self::racks(order)
        }
    }
}

/// Size bounds and branch ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub max_quandle_order: usize,
    pub max_rack_order: usize,
    /// When set, candidate rows are tried in a seeded random order.
    pub shuffle_seed: Option<u64>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_quandle_order: 8,
            max_rack_order: 6,
            shuffle_seed: None,
        }
    }
}

/// One representative per cycle type and length of the cycle through 0:
/// the cycle through 0 is `(0 1 … L−1)`, the remaining cycles follow on
/// consecutive points in decreasing length.
fn row_zero_candidates(n: usize, quandle_only: bool) -> Vec<Perm> {
    let mut out = Vec::new();
    for partition in partitions(n) {
        let mut lengths: Vec<usize> = partition.clone();
        lengths.dedup();
        for &first in &lengths {
            if quandle_only && first != 1 {
                continue;
            }
            let mut rest = partition.clone();
            let pos = rest.iter().position(|&x| x == first).unwrap();
            rest.remove(pos);
            let mut images = vec![0; n];
            let mut start = 0;
            for len in std::iter::once(first).chain(rest) {
                for i in 0..len {
                    images[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            out.push(Perm::from_images_unchecked(images));
        }
    }
    out
}

/// Integer partitions of `n` with parts in decreasing order.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partial assignment of rows with forcing and undo.
#[derive(Clone)]
struct Rows {
    n: usize,
    rows: Vec<Option<Perm>>,
    trail: Vec<usize>,
    assigned: Vec<usize>,
}

impl Rows {
    fn new(n: usize) -> Self {
        Rows {
            n,
            rows: vec![None; n],
            trail: Vec::new(),
            assigned: Vec::new(),
        }
    }

    /// Assigns row `a` and propagates; on conflict returns false and leaves
    /// the trail for the caller to undo.
    fn assign(&mut self, a: usize, p: Perm, quandle_only: bool) -> bool {
        let mut work = vec![(a, p)];
        while let Some((x, p)) = work.pop() {
            match &self.rows[x] {
                Some(existing) => {
                    if *existing != p {
                        return false;
                    }
                    continue;
                }
                None => {
                    if quandle_only && p.apply(x) != x {
                        return false;
                    }
                    self.rows[x] = Some(p);
                    self.trail.push(x);
                    self.assigned.push(x);
                }
            }
            let lx = self.rows[x].clone().unwrap();
            for i in 0..self.assigned.len() {
                let y = self.assigned[i];
                let ly = self.rows[y].as_ref().unwrap();
                // ℓ_{x ⊳ y} = ℓ_x ℓ_y ℓ_x⁻¹
                work.push((lx.apply(y), lx.conjugate(ly)));
                if y != x {
                    work.push((ly.apply(x), ly.conjugate(&lx)));
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.rows[x] = None;
            self.assigned.retain(|&y| y != x);
        }
    }

    fn first_unassigned(&self) -> Option<usize> {
        (0..self.n).find(|&a| self.rows[a].is_none())
    }

    fn table(&self) -> RackTable {
        let data = self
            .rows
            .iter()
            .flat_map(|r| r.as_ref().unwrap().images().iter().copied())
            .collect();
        RackTable::from_flat_unchecked(self.n, data)
    }
}

struct Search<'a> {
    filter: EnumerationFilter,
    candidates: &'a [Perm],
    rng: Option<ChaCha8Rng>,
    keys: BTreeSet<CanonicalKey>,
}

impl Search<'_> {
    fn run(&mut self, rows: &mut Rows) {
        let Some(a) = rows.first_unassigned() else {
            let table = rows.table();
            if !self.filter.connected_only || is_connected(&table) {
                self.keys.insert(canonical_key(&table));
            }
            return;
        };
        let mut order: Vec<usize> = (0..self.candidates.len()).collect();
        if let Some(rng) = &mut self.rng {
            order.shuffle(rng);
        }
        for i in order {
            let p = &self.candidates[i];
            if self.filter.quandle_only && p.apply(a) != a {
                continue;
            }
            let mark = rows.trail.len();
            if rows.assign(a, p.clone(), self.filter.quandle_only) {
                self.run(rows);
            }
            rows.undo_to(mark);
        }
    }
}

fn check_bounds(filter: &EnumerationFilter, config: &EnumerationConfig) -> Result<()> {
    let (bound, what) = if filter.quandle_only {
        (config.max_quandle_order, "quandle order")
    } else {
        (config.max_rack_order, "rack order")
    };
    if filter.order > bound {
        return Err(Error::BoundExceeded {
            what,
            value: filter.order,
            bound,
        });
    }
    Ok(())
}

/// Canonical keys of all classes matching the filter, sorted.
pub fn enumerate_keys_with(
    filter: EnumerationFilter,
    config: &EnumerationConfig,
) -> Result<Vec<CanonicalKey>> {
    check_bounds(&filter, config)?;
    let n = filter.order;
    if n == 0 {
        return Ok(if filter.connected_only {
            Vec::new()
        } else {
            vec![canonical_key(&RackTable::empty())]
        });
    }
    let perms = all_perms(n);
    let mut tasks: Vec<(usize, Rows)> = Vec::new();
    let mut pools: Vec<Vec<Perm>> = Vec::new();
    for row0 in row_zero_candidates(n, filter.quandle_only) {
        let pool: Vec<Perm> = if filter.connected_only {
            let ct = row0.cycle_type();
            perms.iter().filter(|p| p.cycle_type() == ct).cloned().collect()
        } else {
            perms.clone()
        };
        let mut rows = Rows::new(n);
        if !rows.assign(0, row0, filter.quandle_only) {
            continue;
        }
        // split once more on the first row left open, for load balance
        match rows.first_unassigned() {
            None => tasks.push((pools.len(), rows)),
            Some(a) => {
                for p in pool.iter().filter(|p| !filter.quandle_only || p.apply(a) == a) {
                    let mut child = rows.clone();
                    if child.assign(a, p.clone(), filter.quandle_only) {
                        tasks.push((pools.len(), child));
                    }
                }
            }
        }
        pools.push(pool);
    }
    let results: Vec<BTreeSet<CanonicalKey>> = tasks
        .into_par_iter()
        .enumerate()
        .map(|(task, (pool, mut rows))| {
            let mut search = Search {
                filter,
                candidates: &pools[pool],
                rng: config.shuffle_seed.map(|s| {
                    ChaCha8Rng::seed_from_u64(s ^ (task as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
                }),
                keys: BTreeSet::new(),
            };
            search.run(&mut rows);
            search.keys
        })
        .collect();
    Ok(results
        .into_iter()
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

pub fn enumerate_keys(filter: EnumerationFilter) -> Result<Vec<CanonicalKey>> {
    enumerate_keys_with(filter, &EnumerationConfig::default())
}

/// One canonical table per isomorphism class, sorted by key.
pub fn enumerate_racks_with(filter: EnumerationFilter, config: &EnumerationConfig) -> Result<Vec<RackTable>> {
    Ok(enumerate_keys_with(filter, config)?
        .iter()
        .map(CanonicalKey::to_rack)
        .collect())
}

pub fn enumerate_racks(filter: EnumerationFilter) -> Result<Vec<RackTable>> {
    enumerate_racks_with(filter, &EnumerationConfig::default())
}

pub fn count(filter: EnumerationFilter) -> Result<usize> {
    Ok(enumerate_keys(filter)?.len())
}

/// Registers every connected class matching the filter; returns how many
/// were new.
pub fn populate_registry(filter: EnumerationFilter, registry: &ClassRegistry) -> Result<usize> {
    let before = registry.len();
    for rack in enumerate_racks(filter)? {
        if is_connected(&rack) {
            registry.register(&rack)?;
        }
    }
    Ok(registry.len() - before)
}
