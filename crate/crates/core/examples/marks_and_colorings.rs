//! Morphism censuses, marks and knot colorings.

use rackring::burnside::b_of;
use rackring::enumerate::{enumerate_racks, EnumerationFilter};
use rackring::marks::{census, colorings, mark, mark_matrix, verify_triangular_recursion, PresentedQuandle};
use rackring::{ClassRegistry, FinGroup, RackTable};

fn main() {
    let d3 = RackTable::dihedral(3);
    let c = census(&d3, &d3);
    println!("Dih3 -> Dih3: mor={} inj={} sur={}", c.mor, c.inj, c.sur);
    for (key, count) in &c.by_image {
        println!("  image of order {}: {count}", key.order());
    }
    println!(
        "triangular recursion holds: {}",
        verify_triangular_recursion(&d3, &d3)
    );

    let reg = ClassRegistry::new();
    let s3 = b_of(&reg, &RackTable::conjugation_quandle(&FinGroup::symmetric(3))).unwrap();
    println!("mark of Dih3 on b(Sym(3)) = {}", mark(&d3, &s3, &reg).unwrap());

    let classes: Vec<RackTable> = (1..=3)
        .flat_map(|n| enumerate_racks(EnumerationFilter::connected_racks(n)).unwrap())
        .collect();
    println!("mark matrix over connected classes of order <= 3:");
    for row in mark_matrix(&classes, &classes).unwrap() {
        println!("  {row:?}");
    }

    let trefoil = PresentedQuandle::trefoil();
    println!("trefoil colorings by Dih3: {}", colorings(&trefoil, &d3));
    println!(
        "trefoil colorings by Dih5: {}",
        colorings(&trefoil, &RackTable::dihedral(5))
    );
    println!(
        "trefoil colorings by trivial(4): {}",
        colorings(&trefoil, &RackTable::trivial(4))
    );
}
