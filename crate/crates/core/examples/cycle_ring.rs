//! The Burnside ring of permutations on the cycle basis.

use rackring::burnside::{retract_to_cycles, section_perm};
use rackring::{ClassRegistry, CycleVector, Perm};

fn main() {
    for r in 1..=4 {
        let row: Vec<String> = (1..=4)
            .map(|s| CycleVector::cycle(r).mul(&CycleVector::cycle(s)).to_string())
            .collect();
        println!("c{r} * c1..c4: {}", row.join(" | "));
    }
    let u = CycleVector::one().sub(&CycleVector::cycle(2));
    println!("(1 - c2)^2 = {}", u.mul(&u));

    let p = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4]]).unwrap();
    println!("cycle type of {p:?}: {}", p.cycle_type());

    let reg = ClassRegistry::new();
    let x: CycleVector = "2*c1 + 1*c3".parse().unwrap();
    let section = section_perm(&reg, &x).unwrap();
    println!("section of {x}: {}", reg.render(&section).unwrap());
    println!("retraction: {}", retract_to_cycles(&reg, &section).unwrap());
}
