//! Crossed G-sets and their racks.

use rackring::canonical::are_isomorphic;
use rackring::crossed::{
    action_homomorphism, crossed_product, crossed_sum, crossed_to_rack, diagonal_product_fixed_g,
    is_equivalence, rack_to_crossed, transitive_crossed, transitive_crossed_iso,
};
use rackring::{FinGroup, RackTable};

fn main() {
    let g = FinGroup::symmetric(3);
    let t = (1..6).find(|&x| g.element_order(x) == 2).unwrap();
    let h = g.subgroup_from(&[t]).unwrap();
    let x = transitive_crossed(&g, &h, t).unwrap();
    let rack = crossed_to_rack(&x).unwrap();
    println!("[Sym3/<t>, t]: size {}, delta {:?}", x.x_size(), x.delta());
    println!(
        "its rack is Dih3: {}",
        are_isomorphic(&rack, &RackTable::dihedral(3))
    );

    let others: Vec<usize> = g.conjugacy_class(t);
    println!(
        "[1, t] ~ [1, t'] for all transpositions: {}",
        others
            .iter()
            .all(|&s| transitive_crossed_iso(&g, (&[0], t), (&[0], s)))
    );

    let r = RackTable::dihedral(3);
    let a = rack_to_crossed(&r).unwrap();
    println!("Aut(Dih3) has order {}", a.group().order());
    println!(
        "round trip preserves the table: {}",
        crossed_to_rack(&a).unwrap() == r
    );
    let (f, y) = action_homomorphism(&a).unwrap();
    let w: Vec<usize> = (0..r.order()).collect();
    println!(
        "action homomorphism is an equivalence: {}",
        is_equivalence(&f, &w, &a, &y)
    );

    let c2 = rack_to_crossed(&RackTable::cycle(2)).unwrap();
    let sum = crossed_to_rack(&crossed_sum(&a, &c2).unwrap()).unwrap();
    let prod = crossed_to_rack(&crossed_product(&a, &c2).unwrap()).unwrap();
    println!(
        "sum gives Dih3 + C2: {}",
        sum == r.disjoint_union(&RackTable::cycle(2))
    );
    println!(
        "product gives Dih3 x C2: {}",
        prod == r.product(&RackTable::cycle(2))
    );

    let diag = diagonal_product_fixed_g(&x, &x).unwrap();
    println!("diagonal product over Sym3 has {} points", diag.x_size());
}
