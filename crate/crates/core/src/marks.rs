//! Counting rack morphisms, marks, and colorings by presented quandles.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::burnside::{BurnsideElement, ClassRegistry};
use crate::canonical::{automorphism_group, canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::rack::RackTable;
use crate::structure::is_connected;

/// `(x, a, b)` meaning `x = a ⊳ b`.
type Deduction = (usize, usize, usize);

/// One generator of the source together with the elements its assignment
/// determines, each as `(x, a, b)` meaning `x = a ⊳ b`.
struct Step {
    generator: usize,
    derived: Vec<(usize, usize, usize)>,
}

/// A generating sequence, chosen greedily so that every new generator
/// determines as many further elements as possible.
fn generating_steps(c: &RackTable) -> Vec<Step> {
    let n = c.order();
    let mut known = vec![false; n];
    let mut steps = Vec::new();
    let mut count = 0;
    while count < n {
        let mut best: Option<(usize, Vec<Deduction>)> = None;
        for g in (0..n).filter(|&g| !known[g]) {
            let derived = closure_steps(c, &known, g);
            if best.as_ref().is_none_or(|(_, d)| derived.len() > d.len()) {
                best = Some((g, derived));
            }
        }
        let (generator, derived) = best.unwrap();
        known[generator] = true;
        count += 1;
        for &(x, _, _) in &derived {
            known[x] = true;
            count += 1;
        }
        steps.push(Step { generator, derived });
    }
    steps
}

fn closure_steps(c: &RackTable, known: &[bool], g: usize) -> Vec<(usize, usize, usize)> {
    let mut known = known.to_vec();
    known[g] = true;
    let mut members: Vec<usize> = (0..c.order()).filter(|&x| known[x]).collect();
    let mut derived = Vec::new();
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        let mut j = 0;
        while j <= i {
            let b = members[j];
            for (p, q) in [(a, b), (b, a)] {
                let x = c.op(p, q);
                if !known[x] {
                    known[x] = true;
                    members.push(x);
                    derived.push((x, p, q));
                }
            }
            j += 1;
        }
        i += 1;
    }
    derived
}

struct MorphismSearch<'a, F: FnMut(&[usize])> {
    c: &'a RackTable,
    r: &'a RackTable,
    steps: Vec<Step>,
    image: Vec<usize>,
    defined: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[usize])> MorphismSearch<'_, F> {
    fn run(&mut self, level: usize) {
        if level == self.steps.len() {
            (self.visit)(&self.image);
            return;
        }
        let generator = self.steps[level].generator;
        for v in 0..self.r.order() {
            self.image[generator] = v;
            self.defined[generator] = true;
            for k in 0..self.steps[level].derived.len() {
                let (x, a, b) = self.steps[level].derived[k];
                self.image[x] = self.r.op(self.image[a], self.image[b]);
                self.defined[x] = true;
            }
            if self.consistent(level) {
                self.run(level + 1);
            }
            for &(x, _, _) in &self.steps[level].derived {
                self.defined[x] = false;
            }
            self.defined[generator] = false;
        }
    }

    /// Checks every relation `a ⊳ b = x` among defined elements in which
    /// some element was defined at this level.
    fn consistent(&self, level: usize) -> bool {
        let step = &self.steps[level];
        let n = self.c.order();
        let mut fresh = vec![false; n];
        fresh[step.generator] = true;
        for d in &step.derived {
            fresh[d.0] = true;
        }
        for a in (0..n).filter(|&a| self.defined[a]) {
            for b in (0..n).filter(|&b| self.defined[b]) {
                let ab = self.c.op(a, b);
                if self.defined[ab]
                    && (fresh[a] || fresh[b] || fresh[ab])
                    && self.image[ab] != self.r.op(self.image[a], self.image[b])
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Calls `visit` on every morphism `C → R`, given by its images, in
/// lexicographic order of the generator assignments.
pub fn for_each_morphism(c: &RackTable, r: &RackTable, visit: impl FnMut(&[usize])) {
    let mut search = MorphismSearch {
        c,
        r,
        steps: generating_steps(c),
        image: vec![0; c.order()],
        defined: vec![false; c.order()],
        visit,
    };
    search.run(0);
}

pub fn enumerate_morphisms(c: &RackTable, r: &RackTable) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_morphism(c, r, |f| out.push(f.to_vec()));
    out
}

pub fn count_morphisms(c: &RackTable, r: &RackTable) -> u64 {
    let mut count = 0;
    for_each_morphism(c, r, |_| count += 1);
    count
}

/// Morphisms `C → R` sorted by injectivity, surjectivity and image class.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MorphismCensus {
    pub mor: u64,
    pub inj: u64,
    pub sur: u64,
    pub by_image: BTreeMap<CanonicalKey, u64>,
}

pub fn census(c: &RackTable, r: &RackTable) -> MorphismCensus {
    let mut images: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut out = MorphismCensus::default();
    for_each_morphism(c, r, |f| {
        let mut image = f.to_vec();
        image.sort_unstable();
        image.dedup();
        out.mor += 1;
        if image.len() == c.order() {
            out.inj += 1;
        }
        if image.len() == r.order() {
            out.sur += 1;
        }
        *images.entry(image).or_default() += 1;
    });
    for (image, count) in images {
        let key = canonical_key(&r.restrict_unchecked(&image));
        *out.by_image.entry(key).or_default() += count;
    }
    out
}

/// `Φ_C(x)`: the linear extension of `|Mor(C, ·)|`. The source must be
/// connected.
pub fn mark(c: &RackTable, x: &BurnsideElement, registry: &ClassRegistry) -> Result<i64> {
    if !is_connected(c) {
        return Err(Error::NotConnected);
    }
    let mut total = 0i64;
    for (id, coeff) in x.iter() {
        let rep = registry.representative(id)?;
        total += coeff * count_morphisms(c, &rep) as i64;
    }
    Ok(total)
}

/// Entry `(i, j)` is `|Mor(sources[i], targets[j])|`.
pub fn mark_matrix(sources: &[RackTable], targets: &[RackTable]) -> Result<Vec<Vec<u64>>> {
    if sources.iter().any(|c| !is_connected(c)) {
        return Err(Error::NotConnected);
    }
    Ok(sources
        .par_iter()
        .map(|c| targets.iter().map(|r| count_morphisms(c, r)).collect())
        .collect())
}

/// Checks `|Mor(C,R)| = |Inj(C,R)| + Σ_{|D|<|C|} |Mor^D(C,R)|` and
/// `|Mor^D(C,R)| · |Aut D| = |Inj(D,R)| · |Sur(C,D)|` for every image class.
pub fn verify_triangular_recursion(c: &RackTable, r: &RackTable) -> bool {
    let whole = census(c, r);
    let smaller: u64 = whole
        .by_image
        .iter()
        .filter(|(d, _)| d.order() < c.order())
        .map(|(_, &m)| m)
        .sum();
    if whole.mor != whole.inj + smaller {
        return false;
    }
    whole.by_image.iter().all(|(d_key, &mor_d)| {
        let d = d_key.to_rack();
        let aut = automorphism_group(&d).map(|g| g.order()).unwrap_or(1);
        let inj = census(&d, r).inj as u128;
        let sur = census(c, &d).sur as u128;
        mor_d as u128 * aut == inj * sur
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    /// `g_i ⊳ g_j = g_m`
    Apply,
    /// `g_i ⊳⁻¹ g_j = g_m`
    Unapply,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub i: usize,
    pub j: usize,
    pub m: usize,
}

/// A finite presentation with generators `g_0, …, g_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedQuandle {
    k: usize,
    relations: Vec<Relation>,
}

impl PresentedQuandle {
    pub fn new(k: usize, relations: Vec<Relation>) -> Result<Self> {
        for r in &relations {
            for idx in [r.i, r.j, r.m] {
                if idx >= k {
                    return Err(Error::OutOfRange { index: idx, size: k });
                }
            }
        }
        Ok(PresentedQuandle { k, relations })
    }

    /// The trefoil: `a ⊳ b = c`, `b ⊳ c = a`, `c ⊳ a = b`.
    pub fn trefoil() -> Self {
        let rel = |i, j, m| Relation {
            kind: RelationKind::Apply,
            i,
            j,
            m,
        };
        PresentedQuandle {
            k: 3,
            relations: vec![rel(0, 1, 2), rel(1, 2, 0), rel(2, 0, 1)],
        }
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
}

/// Number of assignments of the generators into `R` satisfying every
/// relation.
pub fn colorings(p: &PresentedQuandle, r: &RackTable) -> u64 {
    let n = r.order();
    let inverse_rows: Vec<Vec<usize>> = (0..n)
        .map(|a| r.left_mult(a).inverse().images().to_vec())
        .collect();
    // relations checkable once generators 0..=t are assigned
    let mut due: Vec<Vec<Relation>> = vec![Vec::new(); p.k];
    for rel in &p.relations {
        due[rel.i.max(rel.j).max(rel.m)].push(*rel);
    }
    fn go(
        t: usize,
        assignment: &mut Vec<usize>,
        due: &[Vec<Relation>],
        r: &RackTable,
        inverse_rows: &[Vec<usize>],
    ) -> u64 {
        if t == due.len() {
            return 1;
        }
        let mut total = 0;
        for v in 0..r.order() {
            assignment[t] = v;
            let ok = due[t].iter().all(|rel| {
                let (a, b) = (assignment[rel.i], assignment[rel.j]);
                let value = match rel.kind {
                    RelationKind::Apply => r.op(a, b),
                    RelationKind::Unapply => inverse_rows[a][b],
                };
                value == assignment[rel.m]
            });
            if ok {
                total += go(t + 1, assignment, due, r, inverse_rows);
            }
        }
        total
    }
    go(0, &mut vec![0; p.k], &due, r, &inverse_rows)
}
