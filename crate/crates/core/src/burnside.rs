//! The Burnside ring of finite racks on the basis of connected classes, its
//! ring maps, and prime factorization of connected quandles.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_key, CanonicalKey};
use crate::cycles::CycleVector;
use crate::enumerate::{enumerate_racks_with, EnumerationConfig, EnumerationFilter};
use crate::error::{Error, Result};
use crate::io::{format_rack, parse_racks};
use crate::rack::RackTable;
use crate::structure::{is_connected, pi_decomposition};

pub const REGISTRY_FILE: &str = "registry.txt";
pub const REPRESENTATIVES_FILE: &str = "representatives.txt";
pub const PRODUCTS_FILE: &str = "products.txt";

/// Index of a connected class in a [`ClassRegistry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassId(pub u32);

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub id: ClassId,
    pub key: CanonicalKey,
    pub order: usize,
    pub quandle: bool,
    /// The canonical table of the class.
    pub representative: RackTable,
}

impl ClassEntry {
    fn flags(&self) -> &'static str {
        if self.quandle {
            "cq"
        } else {
            "c-"
        }
    }
}

#[derive(Default)]
struct Classes {
    entries: Vec<ClassEntry>,
    by_key: HashMap<CanonicalKey, ClassId>,
}

/// Connected isomorphism classes with ids assigned in first-seen order.
///
/// Reads may run concurrently; registration takes an exclusive lock.
#[derive(Default)]
pub struct ClassRegistry {
    classes: RwLock<Classes>,
    products: Mutex<BTreeMap<(ClassId, ClassId), BurnsideElement>>,
}

impl ClassRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.classes.read().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The id of the class of a connected rack, registering it if new.
    pub fn register(&self, rack: &RackTable) -> Result<ClassId> {
        if !is_connected(rack) {
            return Err(Error::NotConnected);
        }
        self.register_key(canonical_key(rack))
    }

    /// Registers the class of a canonical key whose table is connected.
    pub fn register_key(&self, key: CanonicalKey) -> Result<ClassId> {
        if let Some(id) = self.id_of(&key) {
            return Ok(id);
        }
        let representative = key.to_rack();
        if !is_connected(&representative) {
            return Err(Error::NotConnected);
        }
        let mut classes = self.classes.write().unwrap();
        if let Some(&id) = classes.by_key.get(&key) {
            return Ok(id);
        }
        let id = ClassId(classes.entries.len() as u32);
        classes.by_key.insert(key.clone(), id);
        classes.entries.push(ClassEntry {
            id,
            order: representative.order(),
            quandle: representative.is_quandle(),
            key,
            representative,
        });
        Ok(id)
    }

    pub fn id_of(&self, key: &CanonicalKey) -> Option<ClassId> {
        self.classes.read().unwrap().by_key.get(key).copied()
    }

    pub fn entry(&self, id: ClassId) -> Result<ClassEntry> {
        self.classes
            .read()
            .unwrap()
            .entries
            .get(id.0 as usize)
            .cloned()
            .ok_or_else(|| Error::UnknownClass(format!("id {id}")))
    }

    pub fn representative(&self, id: ClassId) -> Result<RackTable> {
        Ok(self.entry(id)?.representative)
    }

    pub fn key(&self, id: ClassId) -> Result<CanonicalKey> {
        Ok(self.entry(id)?.key)
    }

    pub fn entries(&self) -> Vec<ClassEntry> {
        self.classes.read().unwrap().entries.clone()
    }

    /// The id of the singleton class `⋆`.
    pub fn star(&self) -> ClassId {
        self.register(&RackTable::singleton())
            .expect("the singleton is connected")
    }

    /// Writes the registry, the representatives and the product memo.
    pub fn save_to_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let entries = self.entries();
        let mut reg = String::from("# <id> <order> <flags> <key>\n");
        let mut reps = String::new();
        for e in &entries {
            reg.push_str(&format!("{} {} {} {}\n", e.id, e.order, e.flags(), e.key));
            reps.push_str(&format!("# class {}\n", e.id));
            reps.push_str(&format_rack(&e.representative));
        }
        let mut products = String::from("# <id> <id> <coefficient>:<id> ...\n");
        for ((a, b), x) in self.products.lock().unwrap().iter() {
            let terms: Vec<String> = x.iter().map(|(id, c)| format!("{c}:{id}")).collect();
            products.push_str(&format!("{a} {b} {}\n", terms.join(" ")).replace("  ", " "));
        }
        write_atomically(&dir.join(REGISTRY_FILE), &reg)?;
        write_atomically(&dir.join(REPRESENTATIVES_FILE), &reps)?;
        write_atomically(&dir.join(PRODUCTS_FILE), &products)?;
        Ok(())
    }

    /// Reads a registry written by [`ClassRegistry::save_to_dir`]; a missing
    /// directory or file gives an empty registry.
    pub fn load_from_dir(dir: &Path) -> Result<Self> {
        let registry = ClassRegistry::new();
        let reg_path = dir.join(REGISTRY_FILE);
        if !reg_path.exists() {
            return Ok(registry);
        }
        let text = fs::read_to_string(&reg_path)?;
        let mut keys = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let content = line.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::Parse {
                line: line_no,
                message: format!("{REGISTRY_FILE}: {m}"),
            };
            let t: Vec<&str> = content.split_whitespace().collect();
            if t.len() != 4 {
                return Err(bad("expected `<id> <order> <flags> <key>`"));
            }
            let id: u32 = t[0].parse().map_err(|_| bad("bad id"))?;
            if id as usize != keys.len() {
                return Err(bad("ids must be consecutive from 0"));
            }
            let order: usize = t[1].parse().map_err(|_| bad("bad order"))?;
            let key: CanonicalKey = t[3].parse().map_err(|e: Error| bad(&e.to_string()))?;
            if key.order() != order {
                return Err(bad("order does not match key"));
            }
            let rack = key.to_rack();
            let flags = if rack.is_quandle() { "cq" } else { "c-" };
            if t[2] != flags || !is_connected(&rack) {
                return Err(bad("flags do not match the class"));
            }
            keys.push(key);
        }
        let reps_path = dir.join(REPRESENTATIVES_FILE);
        if reps_path.exists() {
            let reps = parse_racks(&fs::read_to_string(&reps_path)?).map_err(|e| match e {
                Error::Parse { line, message } => Error::Parse {
                    line,
                    message: format!("{REPRESENTATIVES_FILE}: {message}"),
                },
                other => other,
            })?;
            if reps.len() != keys.len() || reps.iter().zip(&keys).any(|(r, k)| r != &k.to_rack()) {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("{REPRESENTATIVES_FILE} does not match {REGISTRY_FILE}"),
                });
            }
        }
        for key in keys {
            registry.register_key(key)?;
        }
        let prod_path = dir.join(PRODUCTS_FILE);
        if prod_path.exists() {
            let text = fs::read_to_string(&prod_path)?;
            let mut memo = registry.products.lock().unwrap();
            for (i, line) in text.lines().enumerate() {
                let content = line.split('#').next().unwrap().trim();
                if content.is_empty() {
                    continue;
                }
                let bad = || Error::Parse {
                    line: i + 1,
                    message: format!("{PRODUCTS_FILE}: malformed product line"),
                };
                let t: Vec<&str> = content.split_whitespace().collect();
                if t.len() < 2 {
                    return Err(bad());
                }
                let id = |s: &str| -> Result<ClassId> {
                    let v: u32 = s.parse().map_err(|_| bad())?;
                    if v as usize >= registry.len() {
                        return Err(bad());
                    }
                    Ok(ClassId(v))
                };
                let (a, b) = (id(t[0])?, id(t[1])?);
                let mut x = BurnsideElement::zero();
                for term in &t[2..] {
                    let (c, k) = term.split_once(':').ok_or_else(bad)?;
                    x.add_term(id(k)?, c.parse().map_err(|_| bad())?);
                }
                memo.insert((a, b), x);
            }
        }
        Ok(registry)
    }

    /// Renders as `c * [key] + …` with terms sorted by key; `0` for zero.
    pub fn render(&self, x: &BurnsideElement) -> Result<String> {
        if x.is_zero() {
            return Ok("0".into());
        }
        let mut terms = Vec::new();
        for (id, c) in x.iter() {
            terms.push((self.key(id)?, c));
        }
        terms.sort();
        Ok(terms
            .iter()
            .map(|(k, c)| format!("{c} * [{k}]"))
            .collect::<Vec<_>>()
            .join(" + "))
    }

    /// Parses the output of [`ClassRegistry::render`], registering keys.
    pub fn parse_element(&self, s: &str) -> Result<BurnsideElement> {
        let s = s.trim();
        if s == "0" {
            return Ok(BurnsideElement::zero());
        }
        let bad = |t: &str| Error::Parse {
            line: 1,
            message: format!("bad Burnside term {t:?}"),
        };
        let mut x = BurnsideElement::zero();
        for term in s.split(" + ") {
            let (c, k) = term.split_once(" * ").ok_or_else(|| bad(term))?;
            let k = k
                .trim()
                .strip_prefix('[')
                .and_then(|k| k.strip_suffix(']'))
                .ok_or_else(|| bad(term))?;
            let key: CanonicalKey = k.parse()?;
            x.add_term(self.register_key(key)?, c.trim().parse().map_err(|_| bad(term))?);
        }
        Ok(x)
    }

    /// Lines `<coefficient> <hex key>`.
    pub fn format_element_file(&self, x: &BurnsideElement) -> Result<String> {
        let mut terms = Vec::new();
        for (id, c) in x.iter() {
            terms.push((self.key(id)?, c));
        }
        terms.sort();
        Ok(terms.iter().map(|(k, c)| format!("{c} {k}\n")).collect())
    }

    pub fn parse_element_file(&self, text: &str) -> Result<BurnsideElement> {
        let mut x = BurnsideElement::zero();
        for (i, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let bad = |m: String| Error::Parse {
                line: i + 1,
                message: m,
            };
            let (c, k) = content
                .split_once(char::is_whitespace)
                .ok_or_else(|| bad("expected `<coefficient> <key>`".into()))?;
            let c: i64 = c.parse().map_err(|_| bad(format!("bad coefficient {c:?}")))?;
            let key: CanonicalKey = k.trim().parse().map_err(|e: Error| bad(e.to_string()))?;
            x.add_term(self.register_key(key)?, c);
        }
        Ok(x)
    }

    fn product_of_classes(&self, a: ClassId, b: ClassId) -> Result<BurnsideElement> {
        let pair = (a.min(b), a.max(b));
        if let Some(x) = self.products.lock().unwrap().get(&pair) {
            return Ok(x.clone());
        }
        let ra = self.representative(pair.0)?;
        let rb = self.representative(pair.1)?;
        let x = b_of(self, &ra.product(&rb))?;
        self.products.lock().unwrap().insert(pair, x.clone());
        Ok(x)
    }
}

fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// A finitely supported integer combination of connected classes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BurnsideElement {
    coeffs: BTreeMap<ClassId, i64>,
}

impl BurnsideElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn class(id: ClassId) -> Self {
        Self::term(1, id)
    }

    pub fn term(coeff: i64, id: ClassId) -> Self {
        let mut x = Self::zero();
        x.add_term(id, coeff);
        x
    }

    pub fn add_term(&mut self, id: ClassId, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(id).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&id);
        }
    }

    pub fn coeff(&self, id: ClassId) -> i64 {
        self.coeffs.get(&id).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ClassId, i64)> + '_ {
        self.coeffs.iter().map(|(&id, &c)| (id, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (id, c) in other.iter() {
            out.add_term(id, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (id, c) in self.iter() {
            out.add_term(id, c * k);
        }
        out
    }
}

/// `b(R)`: the sum of the classes of the maximal connected subracks.
pub fn b_of(registry: &ClassRegistry, rack: &RackTable) -> Result<BurnsideElement> {
    let mut x = BurnsideElement::zero();
    for part in pi_decomposition(rack) {
        let id = registry.register(&rack.restrict_unchecked(part.indices()))?;
        x.add_term(id, 1);
    }
    Ok(x)
}

/// Bilinear extension of `[C]·[D] = b(C × D)`, memoized per pair.
pub fn mul(registry: &ClassRegistry, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
    let mut out = BurnsideElement::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out = out.add(&registry.product_of_classes(a, b)?.scale(ca * cb));
        }
    }
    Ok(out)
}

/// The coefficient of `⋆`.
pub fn epsilon(registry: &ClassRegistry, x: &BurnsideElement) -> i64 {
    registry
        .id_of(&canonical_key(&RackTable::singleton()))
        .map_or(0, |star| x.coeff(star))
}

/// `Σ coefficient · order`.
pub fn cardinality_mark(registry: &ClassRegistry, x: &BurnsideElement) -> Result<i64> {
    let mut total = 0;
    for (id, c) in x.iter() {
        total += c * registry.entry(id)?.order as i64;
    }
    Ok(total)
}

/// Sends `c_n` to the class of the cyclic permutation rack of order `n`.
pub fn section_perm(registry: &ClassRegistry, u: &CycleVector) -> Result<BurnsideElement> {
    let mut x = BurnsideElement::zero();
    for (n, c) in u.iter() {
        x.add_term(registry.register(&RackTable::cycle(n as usize))?, c);
    }
    Ok(x)
}

/// Sends a class to the cycle type of its canonical automorphism.
pub fn retract_to_cycles(registry: &ClassRegistry, x: &BurnsideElement) -> Result<CycleVector> {
    let mut out = CycleVector::zero();
    for (id, c) in x.iter() {
        let sigma = registry.representative(id)?.canonical_automorphism();
        out = out.add(&sigma.cycle_type().scale(c));
    }
    Ok(out)
}

/// Sends a class to the class of the untwisted quandle.
pub fn quandle_retract(registry: &ClassRegistry, x: &BurnsideElement) -> Result<BurnsideElement> {
    let mut out = BurnsideElement::zero();
    for (id, c) in x.iter() {
        let q = registry.representative(id)?.untwist();
        out = out.add(&b_of(registry, &q)?.scale(c));
    }
    Ok(out)
}

/// Linear extension of the profile; connected representatives are
/// homogeneous, so the cycle type of `ℓ_0` serves.
pub fn lambda_profile(registry: &ClassRegistry, x: &BurnsideElement) -> Result<CycleVector> {
    let mut out = CycleVector::zero();
    for (id, c) in x.iter() {
        let rep = registry.representative(id)?;
        out = out.add(&rep.left_mult(0).cycle_type().scale(c));
    }
    Ok(out)
}

/// `Ψ^k`: replace every `ℓ_x` by `ℓ_x^k`.
pub fn psi_power(registry: &ClassRegistry, x: &BurnsideElement, k: i64) -> Result<BurnsideElement> {
    let mut out = BurnsideElement::zero();
    for (id, c) in x.iter() {
        let rep = registry.representative(id)?;
        out = out.add(&b_of(registry, &rep.power(k))?.scale(c));
    }
    Ok(out)
}

/// A multiset of prime classes whose product is the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub factors: Vec<CanonicalKey>,
    /// Another factorization into primes, if the search found one.
    pub alternative: Option<Vec<CanonicalKey>>,
}

/// Bounds for factor searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    pub max_factor_order: usize,
    pub enumeration: EnumerationConfig,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            max_factor_order: 12,
            enumeration: EnumerationConfig::default(),
        }
    }
}

/// Factorization of connected quandles against enumerated connected
/// quandles, cached by order.
#[derive(Default)]
pub struct Factorizer {
    config: FactorConfig,
    cache: Mutex<HashMap<usize, Arc<Vec<RackTable>>>>,
}

impl Factorizer {
    pub fn new(config: FactorConfig) -> Self {
        Factorizer {
            config,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn connected_quandles(&self, order: usize) -> Result<Arc<Vec<RackTable>>> {
        if let Some(list) = self.cache.lock().unwrap().get(&order) {
            return Ok(list.clone());
        }
        let list = Arc::new(enumerate_racks_with(
            EnumerationFilter::connected_quandles(order),
            &self.config.enumeration,
        )?);
        self.cache.lock().unwrap().insert(order, list.clone());
        Ok(list)
    }

    fn check_input(q: &RackTable) -> Result<()> {
        if !q.is_quandle() {
            return Err(Error::NotQuandle);
        }
        if !is_connected(q) {
            return Err(Error::NotConnected);
        }
        Ok(())
    }

    /// All factorizations `Q ≅ A × B` with `1 < |A| ≤ |B|`.
    fn factor_pairs(&self, q: &RackTable) -> Result<Vec<(RackTable, RackTable)>> {
        let n = q.order();
        let key = canonical_key(q);
        let mut out = Vec::new();
        for d in (2..).take_while(|d| d * d <= n) {
            if !n.is_multiple_of(d) {
                continue;
            }
            if d > self.config.max_factor_order {
                return Err(Error::BoundExceeded {
                    what: "smallest factor order",
                    value: d,
                    bound: self.config.max_factor_order,
                });
            }
            let left = self.connected_quandles(d)?;
            if left.is_empty() {
                continue;
            }
            let right = self.connected_quandles(n / d)?;
            for a in left.iter() {
                for b in right.iter() {
                    if canonical_key(&a.product(b)) == key {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Prime: connected, not `⋆`, and only trivial product decompositions.
    pub fn is_prime_quandle(&self, q: &RackTable) -> Result<bool> {
        Self::check_input(q)?;
        if q.order() < 2 {
            return Err(Error::Precondition("primality needs order at least 2"));
        }
        Ok(self.factor_pairs(q)?.is_empty())
    }

    pub fn factor_quandle(&self, q: &RackTable) -> Result<Factorization> {
        Self::check_input(q)?;
        let all = self.all_factorizations(q)?;
        let mut iter = all.into_iter();
        let factors = iter.next().expect("at least one factorization");
        Ok(Factorization {
            factors,
            alternative: iter.next(),
        })
    }

    /// Distinct sorted prime multisets, in order of discovery.
    fn all_factorizations(&self, q: &RackTable) -> Result<Vec<Vec<CanonicalKey>>> {
        if q.order() == 1 {
            return Ok(vec![Vec::new()]);
        }
        let pairs = self.factor_pairs(q)?;
        if pairs.is_empty() {
            return Ok(vec![vec![canonical_key(q)]]);
        }
        let mut out: Vec<Vec<CanonicalKey>> = Vec::new();
        for (a, b) in pairs {
            for fa in self.all_factorizations(&a)? {
                for fb in self.all_factorizations(&b)? {
                    let mut f: Vec<CanonicalKey> = fa.iter().chain(&fb).cloned().collect();
                    f.sort();
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
            }
        }
        Ok(out)
    }
}
