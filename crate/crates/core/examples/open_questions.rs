//! Exploratory runs on questions the theory leaves open. Nothing here is
//! asserted; the output records what the search found.

use std::collections::BTreeMap;

use rackring::burnside::{b_of, mul, Factorizer};
use rackring::canonical::{are_isomorphic, canonical_key};
use rackring::crossed::{crossed_to_rack, diagonal_product_fixed_g, transitive_crossed};
use rackring::enumerate::{enumerate_racks, EnumerationFilter};
use rackring::structure::enumerate_decompositions;
use rackring::{BurnsideElement, ClassRegistry, FinGroup, Perm, RackTable};

fn tau_prime_ideals(max: usize) {
    let (mut ideal, mut not_ideal) = (0, 0);
    for n in 1..=max {
        for r in enumerate_racks(EnumerationFilter::racks(n)).unwrap() {
            if r.is_ideal(&r.tau_prime()).unwrap() {
                ideal += 1;
            } else {
                not_ideal += 1;
                if not_ideal <= 3 {
                    println!("  tau' not an ideal: {:?}", r.to_rows());
                }
            }
        }
    }
    println!("tau' ideal test, order <= {max}: {ideal} ideal, {not_ideal} not");
}

fn complement_cancellation(max: usize) {
    let mut found = 0;
    let mut checked = 0;
    for n in 2..=max {
        for r in enumerate_racks(EnumerationFilter::racks(n)).unwrap() {
            let mut parts = Vec::new();
            for (s, t) in enumerate_decompositions(&r).unwrap() {
                let (rs, rt) = (r.restrict(&s).unwrap(), r.restrict(&t).unwrap());
                parts.push((rs.clone(), canonical_key(&rt)));
                parts.push((rt, canonical_key(&rs)));
            }
            for (i, (s1, t1)) in parts.iter().enumerate() {
                for (s2, t2) in &parts[i + 1..] {
                    if t1 == t2 {
                        checked += 1;
                        if !are_isomorphic(s1, s2) {
                            found += 1;
                            if found <= 3 {
                                println!("  counterexample in {:?}", r.to_rows());
                            }
                        }
                    }
                }
            }
        }
    }
    println!("isomorphic complements, order <= {max}: {checked} pairs, {found} with non-isomorphic partners");
}

fn factorization_uniqueness() {
    let f = Factorizer::default();
    let quandles: Vec<RackTable> = (2..=4)
        .flat_map(|n| enumerate_racks(EnumerationFilter::connected_quandles(n)).unwrap())
        .collect();
    let mut alternatives = 0;
    let mut total = 0;
    for a in &quandles {
        for b in &quandles {
            if a.order() * b.order() > 16 {
                continue;
            }
            total += 1;
            if f.factor_quandle(&a.product(b)).unwrap().alternative.is_some() {
                alternatives += 1;
            }
        }
    }
    println!("prime factorizations of {total} products: {alternatives} with an alternative");
}

fn diagonal_products(groups: &[(String, FinGroup)]) {
    let reg = ClassRegistry::new();
    for (name, g) in groups {
        let mut subgroups = std::collections::BTreeSet::new();
        for a in 0..g.order() {
            subgroups.insert(g.subgroup_from(&[a]).unwrap());
        }
        let mut crossed = Vec::new();
        for h in &subgroups {
            for a in 0..g.order() {
                if let Ok(x) = transitive_crossed(g, h, a) {
                    crossed.push(x);
                }
            }
        }
        let mut tally: BTreeMap<bool, usize> = BTreeMap::new();
        for x in &crossed {
            for y in &crossed {
                let d = diagonal_product_fixed_g(x, y).unwrap();
                let lhs = b_of(&reg, &crossed_to_rack(&d).unwrap()).unwrap();
                let bx: BurnsideElement = b_of(&reg, &crossed_to_rack(x).unwrap()).unwrap();
                let by = b_of(&reg, &crossed_to_rack(y).unwrap()).unwrap();
                let rhs = mul(&reg, &bx, &by).unwrap();
                *tally.entry(lhs == rhs).or_default() += 1;
            }
        }
        println!(
            "diagonal product vs ring product over {name}: {} agree, {} differ",
            tally.get(&true).unwrap_or(&0),
            tally.get(&false).unwrap_or(&0)
        );
    }
}

fn main() {
    let max_order: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    tau_prime_ideals(max_order.min(5));
    complement_cancellation(max_order.min(6));
    factorization_uniqueness();
    let perms = |gens: &[&[&[usize]]]| {
        let gens: Vec<Perm> = gens.iter().map(|c| Perm::from_cycles(4, c).unwrap()).collect();
        FinGroup::from_permutations(4, &gens).unwrap()
    };
    let c2 = FinGroup::cyclic(2);
    let mut groups: Vec<(String, FinGroup)> =
        (2..=12).map(|n| (format!("C{n}"), FinGroup::cyclic(n))).collect();
    groups.push(("C2xC2".into(), c2.direct_product(&c2)));
    groups.push(("C2xC4".into(), c2.direct_product(&FinGroup::cyclic(4))));
    groups.push(("C2xC2xC2".into(), c2.direct_product(&c2).direct_product(&c2)));
    groups.push(("C2xC6".into(), c2.direct_product(&FinGroup::cyclic(6))));
    groups.push(("Sym3".into(), FinGroup::symmetric(3)));
    groups.push(("D4".into(), perms(&[&[&[0, 1, 2, 3]], &[&[1, 3]]])));
    groups.push(("D6".into(), FinGroup::symmetric(3).direct_product(&c2)));
    groups.push(("A4".into(), perms(&[&[&[0, 1, 2]], &[&[1, 2, 3]]])));
    diagonal_products(&groups);
}
