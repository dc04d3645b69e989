//! Parse a rack file, validate it and print its structural invariants.
//!
//! Usage: `cargo run --example validate_and_analyze [FILE]`

use rackring::io::{format_rack, parse_rack};
use rackring::structure::{analyze, decomposition_tree, enumerate_decompositions, pi_decomposition};
use rackring::{Perm, RackTable};

fn report(name: &str, rack: &RackTable) {
    let a = analyze(rack);
    println!("== {name}");
    print!("{}", format_rack(rack));
    println!(
        "quandle={} connected={} homogeneous={} irreducible={} orbits={:?} depth={}",
        a.quandle, a.connected, a.homogeneous, a.irreducible, a.orbit_sizes, a.depth
    );
    println!(
        "profile={} sigma={}",
        a.profile.as_deref().unwrap_or("-"),
        a.sigma_cycle_type
    );
    let parts: Vec<_> = pi_decomposition(rack)
        .iter()
        .map(|s| s.indices().to_vec())
        .collect();
    println!("maximal connected subracks: {parts:?}");
    if let Ok(pairs) = enumerate_decompositions(rack) {
        println!("decompositions: {}", pairs.len());
    }
    println!("tree leaves: {}", decomposition_tree(rack).leaves().len());
}

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable file");
        match parse_rack(&text) {
            Ok(rack) => report(&path, &rack),
            Err(e) => {
                eprintln!("{path}: {e}");
                std::process::exit(1);
            }
        }
        return;
    }
    let double_swap = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
    report("dihedral(3)", &RackTable::dihedral(3));
    report("dihedral(4)", &RackTable::dihedral(4));
    report(
        "permutation rack of (01)(23)",
        &RackTable::permutation_rack(&double_swap),
    );
    report("trivial(3)", &RackTable::trivial(3));
    let broken = vec![vec![1, 0], vec![0, 1]];
    match RackTable::from_rows(&broken) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("[[1,0],[0,1]] rejected: {e}"),
    }
}
