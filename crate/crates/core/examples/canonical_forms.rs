//! Canonical keys, isomorphism witnesses and automorphism groups.

use rackring::canonical::{automorphism_group, canonical_form, find_isomorphism};
use rackring::{Perm, RackTable};

fn main() {
    let d4 = RackTable::dihedral(4);
    let shuffle = Perm::from_images(vec![2, 0, 3, 1]).unwrap();
    let relabeled = d4.relabel(&shuffle);
    let a = canonical_form(&d4);
    let b = canonical_form(&relabeled);
    println!("key(Dih4)            = {}", a.key);
    println!("key(relabeled Dih4)  = {}", b.key);
    assert_eq!(a.key, b.key);
    let iso = find_isomorphism(&d4, &relabeled).unwrap();
    println!("isomorphism Dih4 -> relabeled: {iso:?}");
    assert!(d4.is_morphism_to(&relabeled, iso.images()));

    for (name, rack) in [
        ("dihedral(3)", RackTable::dihedral(3)),
        ("dihedral(4)", d4),
        ("cycle(6)", RackTable::cycle(6)),
        ("tetrahedral", RackTable::tetrahedral()),
        ("trivial(12)", RackTable::trivial(12)),
    ] {
        let aut = automorphism_group(&rack).unwrap();
        println!("|Aut({name})| = {}", aut.order());
    }

    let p = RackTable::permutation_rack(&Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap());
    let c2 = RackTable::cycle(2);
    let split = c2.disjoint_union(&c2);
    println!(
        "perm rack of (01)(23) vs C2 + C2: {}",
        if find_isomorphism(&p, &split).is_some() {
            "isomorphic"
        } else {
            "not isomorphic"
        }
    );
}
