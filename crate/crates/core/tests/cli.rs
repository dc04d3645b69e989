//! Command-line behaviour through `cli::run`, with a scratch workspace per
//! test.

use std::path::{Path, PathBuf};

use rackring::canonical::canonical_key;
use rackring::cli::run;
use rackring::io::parse_rack;
use rackring::{ClassRegistry, RackTable};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn rackring(workspace: &Path, args: &[&str]) -> (i32, String) {
    let mut full = vec![
        "rackring".to_string(),
        "--workspace".into(),
        workspace.to_string_lossy().into(),
    ];
    full.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = run(full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn scratch() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws");
    (dir, ws)
}

#[test]
fn validate_reports_kind_and_order() {
    let (_d, ws) = scratch();
    assert_eq!(
        rackring(&ws, &["validate", &data("dih3.rack")]),
        (0, "valid quandle, order 3\n".into())
    );
    assert_eq!(
        rackring(&ws, &["validate", &data("double_swap.rack")]),
        (0, "valid rack, order 4\n".into())
    );
}

#[test]
fn malformed_files_name_the_line() {
    let (dir, ws) = scratch();
    let (code, out) = rackring(&ws, &["validate", &data("short.rack")]);
    assert_eq!(code, 1);
    assert!(out.contains("line 3"), "{out}");
    let bad = dir.path().join("bad.rack");
    std::fs::write(&bad, "rack 2\n1 0\n0 1\n").unwrap();
    let (code, out) = rackring(&ws, &["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("self-distributivity fails at (0, 0, 0)"), "{out}");
    let (code, _) = rackring(&ws, &["validate", "/no/such/file.rack"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two() {
    let (_d, ws) = scratch();
    assert_eq!(rackring(&ws, &["frobnicate"]).0, 2);
    assert_eq!(rackring(&ws, &["enumerate"]).0, 2);
    assert_eq!(rackring(&ws, &["--help"]).0, 0);
}

#[test]
fn burnside_of_sym3_and_reparse() {
    let (_d, ws) = scratch();
    let (code, out) = rackring(&ws, &["burnside", &data("sym3_conj.rack")]);
    assert_eq!(code, 0);
    let star = canonical_key(&RackTable::singleton());
    let d3 = canonical_key(&RackTable::dihedral(3));
    assert_eq!(out, format!("3 * [{star}] + 1 * [{d3}]\n"));
    let reg = ClassRegistry::load_from_dir(&ws).unwrap();
    let x = reg.parse_element(out.trim()).unwrap();
    assert_eq!(reg.render(&x).unwrap(), out.trim());
}

#[test]
fn registry_ids_persist_across_runs() {
    let (_d, ws) = scratch();
    rackring(&ws, &["burnside", &data("sym3_conj.rack")]);
    let first = ClassRegistry::load_from_dir(&ws).unwrap().entries();
    let (_, again) = rackring(&ws, &["burnside", &data("dih3.rack")]);
    let second = ClassRegistry::load_from_dir(&ws).unwrap().entries();
    assert_eq!(first, second);
    assert!(!again.is_empty());
    let (code, listing) = rackring(&ws, &["registry"]);
    assert_eq!(code, 0);
    assert_eq!(listing.lines().count(), first.len());
    assert!(!ws.join("registry.lock").exists());
}

#[test]
fn corrupt_registry_is_reported_with_its_line() {
    let (_d, ws) = scratch();
    std::fs::create_dir_all(&ws).unwrap();
    std::fs::write(
        ws.join("registry.txt"),
        "# header\n0 1 cq 000000010000\n1 3 cq zz\n",
    )
    .unwrap();
    let (code, out) = rackring(&ws, &["registry"]);
    assert_eq!(code, 1);
    assert!(out.contains("line 3"), "{out}");
}

#[test]
fn iso_distinguishes_the_split_example() {
    let (_d, ws) = scratch();
    let (code, out) = rackring(&ws, &["iso", &data("double_swap.rack"), &data("two_cycles.rack")]);
    assert_eq!((code, out.as_str()), (0, "not isomorphic\n"));
    let (code, out) = rackring(&ws, &["iso", &data("dih3.rack"), &data("dih3.rack")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("isomorphic\n"));
}

#[test]
fn canon_prints_key_and_table() {
    let (_d, ws) = scratch();
    let (code, out) = rackring(&ws, &["canon", &data("dih3.rack")]);
    assert_eq!(code, 0);
    let key = canonical_key(&RackTable::dihedral(3));
    let mut lines = out.splitn(2, '\n');
    assert_eq!(lines.next().unwrap(), format!("order=3 key={key}"));
    let table = parse_rack(lines.next().unwrap()).unwrap();
    assert_eq!(canonical_key(&table), key);
    assert_eq!(table, key.to_rack());
}

#[test]
fn mul_of_rack_files() {
    let (_d, ws) = scratch();
    let (code, out) = rackring(&ws, &["mul", &data("dih3.rack"), &data("dih3.rack")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("1 * [00000009"), "{out}");
    let (code, out) = rackring(&ws, &["--json", "mul", &data("dih3.rack"), &data("dih3.rack")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"][0]["order"], 9);
}

#[test]
fn marks_and_color() {
    let (_d, ws) = scratch();
    let (code, out) = rackring(&ws, &["marks", &data("dih3.rack"), &data("dih3.rack")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("mor=9 inj=6 sur=6\n"));
    assert_eq!(
        rackring(&ws, &["color", &data("trefoil.qpres"), &data("dih3.rack")]),
        (0, "9\n".into())
    );
}

#[test]
fn enumerate_emits_rack_files() {
    let (dir, ws) = scratch();
    let emit = dir.path().join("out");
    let (code, out) = rackring(
        &ws,
        &[
            "enumerate",
            "--order",
            "5",
            "--quandle",
            "--connected",
            "--emit",
            emit.to_str().unwrap(),
        ],
    );
    assert_eq!((code, out.as_str()), (0, "3\n"));
    let files: Vec<_> = std::fs::read_dir(&emit).unwrap().collect();
    assert_eq!(files.len(), 3);
    for f in files {
        let path = f.unwrap().path();
        let rack = parse_rack(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
        assert_eq!(canonical_key(&rack).hex(), stem);
    }
    assert_eq!(rackring(&ws, &["enumerate", "--order", "7"]).0, 1);
}

#[test]
fn group_commands() {
    let (_d, ws) = scratch();
    let (code, out) = rackring(&ws, &["coset-rack", &data("sl2_f3.grp"), "--h", "0", "--mu", "0"]);
    assert_eq!(code, 0);
    assert_eq!(parse_rack(&out).unwrap(), RackTable::trivial(24));
    let (code, out) = rackring(&ws, &["coset-rack", &data("sym3.grp"), "--h", "0,1", "--mu", "2"]);
    assert_eq!(code, 1, "{out}");
    let (code, out) = rackring(&ws, &["conj-quandle", &data("sym3.grp"), "--class", "1"]);
    assert_eq!(code, 0);
    let rack = parse_rack(&out).unwrap();
    assert!(rackring::are_isomorphic(&rack, &RackTable::dihedral(3)));
    let (code, out) = rackring(&ws, &["crossed", &data("sym3.grp"), "--h", "0,1", "--a", "1"]);
    assert_eq!(code, 0);
    assert!(rackring::are_isomorphic(
        &parse_rack(&out).unwrap(),
        &RackTable::dihedral(3)
    ));
}

#[test]
fn json_matches_text() {
    let (_d, ws) = scratch();
    let (_, text) = rackring(&ws, &["analyze", &data("dih3.rack")]);
    let (_, json) = rackring(&ws, &["--json", "analyze", &data("dih3.rack")]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(text.contains("connected: true"));
    assert_eq!(v["connected"], true);
    assert_eq!(v["order"], 3);
    assert_eq!(v["profile"], "1^1 2^1");
}

#[test]
fn commands_are_deterministic() {
    let (_d, ws) = scratch();
    for args in [
        vec!["decompose", "double_swap.rack"],
        vec!["analyze", "sym3_conj.rack"],
        vec!["burnside", "sym3_conj.rack"],
    ] {
        let file = data(args[1]);
        let a = rackring(&ws, &[args[0], &file]);
        let b = rackring(&ws, &[args[0], &file]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }
}

#[test]
fn concurrent_writers_share_one_registry() {
    let (_d, ws) = scratch();
    let files = [
        "sym3_conj.rack",
        "dih3.rack",
        "double_swap.rack",
        "two_cycles.rack",
    ];
    std::thread::scope(|s| {
        for f in files.iter().cycle().take(8) {
            let ws = &ws;
            s.spawn(move || assert_eq!(rackring(ws, &["burnside", &data(f)]).0, 0));
        }
    });
    let reg = ClassRegistry::load_from_dir(&ws).unwrap();
    assert_eq!(reg.len(), 3);
    assert!(!ws.join("registry.lock").exists());
}
