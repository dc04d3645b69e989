//! The coset rack of SL2(F3) by its upper unitriangular subgroup.

use rackring::canonical::are_isomorphic;
use rackring::crossed::coset_rack;
use rackring::enumerate::{enumerate_racks, EnumerationFilter};
use rackring::group::sl2_generators;
use rackring::io::format_rack;
use rackring::structure::{inner_group, is_connected};
use rackring::{FinGroup, RackTable};

fn main() {
    let g = FinGroup::from_matrices(3, &sl2_generators(3)).unwrap();
    let u = g.index_of_matrix([1, 1, 0, 1]).unwrap();
    let mu = g.index_of_matrix([-1, -1, 0, -1]).unwrap();
    let h = g.subgroup_from(&[u]).unwrap();
    println!("|G| = {}, |H| = {}", g.order(), h.len());
    let c = coset_rack(&g, &h, mu).unwrap();
    print!("{}", format_rack(&c.rack));
    println!("H centralizes mu: {}", c.centralizes);
    println!("connected: {}", is_connected(&c.rack));
    println!("|Inn| = {}", inner_group(&c.rack).unwrap().order());
    println!("sigma = {:?}", c.rack.canonical_automorphism());
    let (q, _) = c.rack.associated_quandle();
    let four = enumerate_racks(EnumerationFilter::connected_quandles(4)).unwrap();
    println!(
        "associated quandle is the connected quandle of order 4: {}",
        are_isomorphic(&q, &four[0])
    );
    let rival = RackTable::cycle(2).product(&RackTable::tetrahedral());
    println!(
        "isomorphic to C2 x tetrahedral: {}",
        are_isomorphic(&c.rack, &rival)
    );
}
