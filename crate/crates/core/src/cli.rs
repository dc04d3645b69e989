//! The `rackring` command line: subcommands over rack, group and
//! presentation files, with a persistent class registry in a workspace
//! directory.

use std::ffi::OsString;
use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::burnside::{b_of, mul, BurnsideElement, ClassRegistry, Factorizer};
use crate::canonical::{canonical_form, find_isomorphism};
use crate::crossed::{coset_rack, crossed_to_rack, transitive_crossed};
use crate::enumerate::{enumerate_keys_with, populate_registry, EnumerationConfig, EnumerationFilter};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::io::{format_rack, parse_group, parse_presentation, parse_rack};
use crate::marks::{census, colorings};
use crate::rack::RackTable;
use crate::structure::{
    analyze, decomposition_tree, enumerate_decompositions, is_connected, pi_decomposition, DecompositionTree,
};

pub const WORKSPACE_ENV: &str = "RACKRING_WORKSPACE";
pub const DEFAULT_WORKSPACE: &str = "rackring-data";
const LOCK_FILE: &str = "registry.lock";
const LOCK_TIMEOUT: Duration = Duration::from_secs(30);

/// A directory holding the class registry, representative tables and
/// memoized products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    path: PathBuf,
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl Workspace {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Workspace { path: path.into() }
    }

    /// The flag if given, else the environment variable, else the default.
    pub fn resolve(flag: Option<&Path>) -> Self {
        match flag {
            Some(p) => Self::new(p),
            None => match std::env::var_os(WORKSPACE_ENV) {
                Some(p) if !p.is_empty() => Self::new(p),
                _ => Self::new(DEFAULT_WORKSPACE),
            },
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn load(&self) -> Result<ClassRegistry> {
        ClassRegistry::load_from_dir(&self.path)
    }

    /// Loads, applies `f` and saves while holding the workspace lock.
    pub fn update<T>(&self, f: impl FnOnce(&ClassRegistry) -> Result<T>) -> Result<T> {
        fs::create_dir_all(&self.path)?;
        let _guard = self.lock()?;
        let registry = self.load()?;
        let value = f(&registry)?;
        registry.save_to_dir(&self.path)?;
        Ok(value)
    }

    fn lock(&self) -> Result<LockGuard> {
        let path = self.path.join(LOCK_FILE);
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut f) => {
                    let _ = writeln!(f, "{}", std::process::id());
                    return Ok(LockGuard(path));
                }
                Err(e) if e.kind() == ErrorKind::AlreadyExists && start.elapsed() < LOCK_TIMEOUT => {
                    thread::sleep(Duration::from_millis(20));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "rackring",
    version,
    about = "Finite racks, quandles and their Burnside ring"
)]
struct Cli {
    /// Workspace directory (overrides RACKRING_WORKSPACE).
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the rack axioms.
    Validate { file: PathBuf },
    /// Structural invariants.
    Analyze { file: PathBuf },
    /// Canonical key and table.
    Canon { file: PathBuf },
    /// Isomorphism test with a witness.
    Iso { first: PathBuf, second: PathBuf },
    /// Decomposition tree, maximal connected subracks and ideal pairs.
    Decompose { file: PathBuf },
    /// The class b(R) in the Burnside ring.
    Burnside {
        file: PathBuf,
        /// Also factor a connected quandle into primes.
        #[arg(long)]
        factor: bool,
    },
    /// Product of two rack files or element files.
    Mul { first: PathBuf, second: PathBuf },
    /// Morphism census from a source rack to a target rack.
    Marks { source: PathBuf, target: PathBuf },
    /// Count colorings of a presented quandle by a rack.
    Color { presentation: PathBuf, rack: PathBuf },
    /// Enumerate isomorphism classes of a given order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        quandle: bool,
        #[arg(long)]
        connected: bool,
        /// Write one `<key>.rack` file per class.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Randomize the branch order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The coset rack αH ⊳ βH = αμα⁻¹βH.
    CosetRack {
        group: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<usize>,
        #[arg(long)]
        mu: usize,
    },
    /// Conjugation quandle of a group or of one conjugacy class.
    ConjQuandle {
        group: PathBuf,
        /// Restrict to the conjugacy class of this element.
        #[arg(long)]
        class: Option<usize>,
    },
    /// The transitive crossed set [G/H, a] and its rack.
    Crossed {
        group: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<usize>,
        #[arg(long)]
        a: usize,
    },
    /// List the registry, or add connected quandles of orders up to N.
    Registry {
        #[arg(long, value_name = "N")]
        populate: Option<usize>,
    },
}

struct Report {
    text: String,
    json: Value,
}

/// Runs the command line, writing the report to `out`; returns the exit
/// code (0 success, 1 domain error, 2 usage error).
pub fn run<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let workspace = Workspace::resolve(cli.workspace.as_deref());
    match execute(&cli.command, &workspace) {
        Ok(report) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.json).unwrap())
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            } else {
                let _ = writeln!(out, "error: {e}");
            }
            1
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{message} (in {})", path.display()),
        },
        Error::InvalidRack(v) => Error::Parse {
            line: 1,
            message: format!("invalid rack: {v} (in {})", path.display()),
        },
        other => other,
    }
}

fn load_rack(path: &Path) -> Result<RackTable> {
    parse_rack(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_group(path: &Path) -> Result<FinGroup> {
    parse_group(&read(path)?).map_err(|e| in_file(path, e))
}

fn rows_json(rack: &RackTable) -> Value {
    json!(rack.to_rows())
}

fn element_report(registry: &ClassRegistry, x: &BurnsideElement) -> Result<(String, Value)> {
    let text = registry.render(x)?;
    let mut terms = Vec::new();
    for (id, c) in x.iter() {
        let e = registry.entry(id)?;
        terms.push(json!({ "coefficient": c, "id": id.0, "order": e.order, "key": e.key.hex() }));
    }
    Ok((text.clone(), json!({ "element": text, "terms": terms })))
}

fn load_element(path: &Path, registry: &ClassRegistry) -> Result<BurnsideElement> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("rack") {
        let rack = parse_rack(&text).map_err(|e| in_file(path, e))?;
        b_of(registry, &rack)
    } else {
        registry.parse_element_file(&text).map_err(|e| in_file(path, e))
    }
}

fn tree_lines(tree: &DecompositionTree, indent: usize, out: &mut String) {
    out.push_str(&format!("{}{:?}\n", "  ".repeat(indent), tree.node.indices()));
    for c in &tree.children {
        tree_lines(c, indent + 1, out);
    }
}

fn execute(command: &Command, workspace: &Workspace) -> Result<Report> {
    match command {
        Command::Validate { file } => {
            let rack = load_rack(file)?;
            let kind = if rack.is_quandle() { "quandle" } else { "rack" };
            Ok(Report {
                text: format!("valid {kind}, order {}\n", rack.order()),
                json: json!({ "valid": true, "quandle": rack.is_quandle(), "order": rack.order() }),
            })
        }
        Command::Analyze { file } => {
            let a = analyze(&load_rack(file)?);
            let sizes: Vec<String> = a.orbit_sizes.iter().map(usize::to_string).collect();
            let text = format!(
                "order: {}\nquandle: {}\nconnected: {}\nhomogeneous: {}\nirreducible: {}\norbit sizes: {}\ndepth: {}\nprofile: {}\nsigma cycle type: {}\n",
                a.order,
                a.quandle,
                a.connected,
                a.homogeneous,
                a.irreducible,
                sizes.join(" "),
                a.depth,
                a.profile.as_deref().unwrap_or("-"),
                a.sigma_cycle_type,
            );
            Ok(Report {
                text,
                json: serde_json::to_value(&a).unwrap(),
            })
        }
        Command::Canon { file } => {
            let form = canonical_form(&load_rack(file)?);
            Ok(Report {
                text: format!(
                    "order={} key={}\n{}",
                    form.key.order(),
                    form.key,
                    format_rack(&form.table)
                ),
                json: json!({
                    "order": form.key.order(),
                    "key": form.key.hex(),
                    "labeling": form.labeling.images(),
                    "table": rows_json(&form.table),
                }),
            })
        }
        Command::Iso { first, second } => {
            let (a, b) = (load_rack(first)?, load_rack(second)?);
            Ok(match find_isomorphism(&a, &b) {
                Some(p) => {
                    let map: Vec<String> = p
                        .images()
                        .iter()
                        .enumerate()
                        .map(|(x, y)| format!("{x}->{y}"))
                        .collect();
                    Report {
                        text: format!("isomorphic\nmap: {}\n", map.join(" ")),
                        json: json!({ "isomorphic": true, "map": p.images() }),
                    }
                }
                None => Report {
                    text: "not isomorphic\n".into(),
                    json: json!({ "isomorphic": false }),
                },
            })
        }
        Command::Decompose { file } => {
            let rack = load_rack(file)?;
            let tree = decomposition_tree(&rack);
            let pi: Vec<Vec<usize>> = pi_decomposition(&rack)
                .iter()
                .map(|s| s.indices().to_vec())
                .collect();
            let pairs: Vec<(Vec<usize>, Vec<usize>)> = enumerate_decompositions(&rack)?
                .into_iter()
                .map(|(s, t)| (s.indices().to_vec(), t.indices().to_vec()))
                .collect();
            let mut text = String::from("tree:\n");
            tree_lines(&tree, 1, &mut text);
            text.push_str(&format!("depth: {}\n", tree.depth()));
            text.push_str(&format!("connected parts: {pi:?}\n"));
            text.push_str(&format!("decompositions: {}\n", pairs.len()));
            for (s, t) in &pairs {
                text.push_str(&format!("  {s:?} | {t:?}\n"));
            }
            Ok(Report {
                text,
                json: json!({
                    "tree": tree,
                    "depth": tree.depth(),
                    "connected_parts": pi,
                    "decompositions": pairs,
                }),
            })
        }
        Command::Burnside { file, factor } => {
            let rack = load_rack(file)?;
            let factorization = if *factor {
                Some(Factorizer::default().factor_quandle(&rack)?)
            } else {
                None
            };
            let (mut text, mut value) = workspace.update(|reg| element_report(reg, &b_of(reg, &rack)?))?;
            text.push('\n');
            if let Some(f) = factorization {
                let show = |keys: &[crate::canonical::CanonicalKey]| {
                    if keys.is_empty() {
                        "1".to_string()
                    } else {
                        keys.iter()
                            .map(|k| format!("[{k}]"))
                            .collect::<Vec<_>>()
                            .join(" x ")
                    }
                };
                text.push_str(&format!("factors: {}\n", show(&f.factors)));
                text.push_str(&format!("prime: {}\n", f.factors.len() == 1));
                if let Some(alt) = &f.alternative {
                    text.push_str(&format!("alternative: {}\n", show(alt)));
                }
                value["factorization"] = serde_json::to_value(&f).unwrap();
            }
            Ok(Report { text, json: value })
        }
        Command::Mul { first, second } => {
            let (text, value) = workspace.update(|reg| {
                let x = load_element(first, reg)?;
                let y = load_element(second, reg)?;
                element_report(reg, &mul(reg, &x, &y)?)
            })?;
            Ok(Report {
                text: text + "\n",
                json: value,
            })
        }
        Command::Marks { source, target } => {
            let c = census(&load_rack(source)?, &load_rack(target)?);
            let mut text = format!("mor={} inj={} sur={}\n", c.mor, c.inj, c.sur);
            for (k, v) in &c.by_image {
                text.push_str(&format!("image [{k}] order {}: {v}\n", k.order()));
            }
            let images: Vec<Value> = c
                .by_image
                .iter()
                .map(|(k, v)| json!({ "key": k.hex(), "count": v }))
                .collect();
            Ok(Report {
                text,
                json: json!({ "mor": c.mor, "inj": c.inj, "sur": c.sur, "by_image": images }),
            })
        }
        Command::Color { presentation, rack } => {
            let p = parse_presentation(&read(presentation)?).map_err(|e| in_file(presentation, e))?;
            let n = colorings(&p, &load_rack(rack)?);
            Ok(Report {
                text: format!("{n}\n"),
                json: json!({ "colorings": n }),
            })
        }
        Command::Enumerate {
            order,
            quandle,
            connected,
            emit,
            seed,
        } => {
            let filter = EnumerationFilter {
                order: *order,
                quandle_only: *quandle,
                connected_only: *connected,
            };
            let config = EnumerationConfig {
                shuffle_seed: *seed,
                ..EnumerationConfig::default()
            };
            let keys = enumerate_keys_with(filter, &config)?;
            if let Some(dir) = emit {
                fs::create_dir_all(dir)?;
                for k in &keys {
                    fs::write(dir.join(format!("{k}.rack")), format_rack(&k.to_rack()))?;
                }
            }
            Ok(Report {
                text: format!("{}\n", keys.len()),
                json: json!({
                    "count": keys.len(),
                    "keys": keys.iter().map(|k| k.hex()).collect::<Vec<_>>(),
                }),
            })
        }
        Command::CosetRack { group, h, mu } => {
            let g = load_group(group)?;
            let c = coset_rack(&g, h, *mu)?;
            let connected = is_connected(&c.rack);
            Ok(Report {
                text: format!(
                    "# H <= C_G(mu): {}\n# connected: {connected}\n{}",
                    c.centralizes,
                    format_rack(&c.rack)
                ),
                json: json!({
                    "centralizes": c.centralizes,
                    "connected": connected,
                    "cosets": c.cosets,
                    "table": rows_json(&c.rack),
                }),
            })
        }
        Command::ConjQuandle { group, class } => {
            let g = load_group(group)?;
            let rack = match class {
                Some(x) => {
                    g.check(*x)?;
                    RackTable::conjugation_class_quandle(&g, &g.conjugacy_class(*x))?
                }
                None => RackTable::conjugation_quandle(&g),
            };
            Ok(Report {
                text: format_rack(&rack),
                json: json!({ "table": rows_json(&rack) }),
            })
        }
        Command::Crossed { group, h, a } => {
            let g = load_group(group)?;
            let x = transitive_crossed(&g, h, *a)?;
            let rack = crossed_to_rack(&x)?;
            let delta: Vec<String> = x.delta().iter().map(usize::to_string).collect();
            Ok(Report {
                text: format!(
                    "# size: {}\n# delta: {}\n{}",
                    x.x_size(),
                    delta.join(" "),
                    format_rack(&rack)
                ),
                json: json!({
                    "size": x.x_size(),
                    "delta": x.delta(),
                    "table": rows_json(&rack),
                }),
            })
        }
        Command::Registry { populate } => {
            let (added, registry) = match populate {
                Some(n) => {
                    let added = workspace.update(|reg| {
                        let mut added = 0;
                        for order in 1..=*n {
                            added += populate_registry(EnumerationFilter::connected_quandles(order), reg)?;
                        }
                        Ok(added)
                    })?;
                    (Some(added), workspace.load()?)
                }
                None => (None, workspace.load()?),
            };
            let entries = registry.entries();
            let mut text = String::new();
            if let Some(k) = added {
                text.push_str(&format!("# added {k}\n"));
            }
            for e in &entries {
                let flags = if e.quandle { "cq" } else { "c-" };
                text.push_str(&format!("{} {} {flags} {}\n", e.id, e.order, e.key));
            }
            let list: Vec<Value> = entries
                .iter()
                .map(|e| json!({ "id": e.id.0, "order": e.order, "quandle": e.quandle, "key": e.key.hex() }))
                .collect();
            Ok(Report {
                text,
                json: json!({ "added": added, "entries": list }),
            })
        }
    }
}
