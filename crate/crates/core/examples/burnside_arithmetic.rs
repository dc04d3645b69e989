//! Arithmetic in the Burnside ring of racks: classes, products, ring maps,
//! persistence and prime factorization.

use rackring::burnside::{
    b_of, cardinality_mark, epsilon, lambda_profile, mul, psi_power, quandle_retract, Factorizer,
};
use rackring::{BurnsideElement, ClassRegistry, FinGroup, RackTable};

fn main() {
    let reg = ClassRegistry::new();
    let s3 = RackTable::conjugation_quandle(&FinGroup::symmetric(3));
    let x = b_of(&reg, &s3).unwrap();
    println!("b(Sym(3))       = {}", reg.render(&x).unwrap());
    println!("|b(Sym(3))|     = {}", cardinality_mark(&reg, &x).unwrap());
    println!("epsilon         = {}", epsilon(&reg, &x));

    let d3 = BurnsideElement::class(reg.register(&RackTable::dihedral(3)).unwrap());
    let square = mul(&reg, &d3, &d3).unwrap();
    println!("[Dih3]^2        = {}", reg.render(&square).unwrap());
    let psi = psi_power(&reg, &d3, 2).unwrap();
    println!("psi^2[Dih3]     = {}", reg.render(&psi).unwrap());
    println!("eps(psi^2 x - x^2) = {}", epsilon(&reg, &psi.sub(&square)));
    println!("lambda[Dih3]    = {}", lambda_profile(&reg, &d3).unwrap());

    let c3 = BurnsideElement::class(reg.register(&RackTable::cycle(3)).unwrap());
    println!(
        "quandle retract of [C3] = {}",
        reg.render(&quandle_retract(&reg, &c3).unwrap()).unwrap()
    );

    let text = reg.render(&x).unwrap();
    assert_eq!(reg.parse_element(&text).unwrap(), x);

    let dir = std::env::temp_dir().join(format!("rackring-example-{}", std::process::id()));
    reg.save_to_dir(&dir).unwrap();
    let back = ClassRegistry::load_from_dir(&dir).unwrap();
    println!("registry round trip: {} classes", back.len());
    std::fs::remove_dir_all(&dir).ok();

    let f = Factorizer::default();
    let dih3 = RackTable::dihedral(3);
    let fac = f.factor_quandle(&dih3.product(&dih3)).unwrap();
    println!("Dih3 x Dih3 factors into {} primes", fac.factors.len());
    for q in [
        RackTable::dihedral(3),
        RackTable::tetrahedral(),
        RackTable::dihedral(5),
    ] {
        println!("order {} prime: {}", q.order(), f.is_prime_quandle(&q).unwrap());
    }
}
