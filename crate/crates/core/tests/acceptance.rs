//! End-to-end acceptance checks, one line of output each. Exits non-zero if
//! any check fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rackring::burnside::{b_of, epsilon, mul, psi_power, retract_to_cycles, section_perm, Factorizer};
use rackring::canonical::{are_isomorphic, canonical_key};
use rackring::crossed::{
    action_homomorphism, coset_rack, crossed_to_rack, is_equivalence, rack_to_crossed, transitive_crossed,
};
use rackring::enumerate::{enumerate_racks, EnumerationFilter};
use rackring::group::{sl2_generators, FinGroup};
use rackring::io::{format_group, parse_group};
use rackring::marks::{
    census, colorings, count_morphisms, mark_matrix, verify_triangular_recursion, PresentedQuandle,
};
use rackring::structure::{
    enumerate_decompositions, inner_group, is_connected, is_homogeneous, is_indecomposable, is_irreducible,
};
use rackring::{BurnsideElement, ClassRegistry, CycleVector, Perm, RackTable};

type Check = Result<(), String>;
type Criterion = fn() -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn racks(n: usize) -> Vec<RackTable> {
    enumerate_racks(EnumerationFilter::racks(n)).unwrap()
}

fn racks_up_to(n: usize) -> Vec<RackTable> {
    (0..=n).flat_map(racks).collect()
}

fn connected_up_to(n: usize) -> Vec<RackTable> {
    (1..=n)
        .flat_map(|k| enumerate_racks(EnumerationFilter::connected_racks(k)).unwrap())
        .collect()
}

fn connected_quandles_up_to(n: usize) -> Vec<RackTable> {
    (1..=n)
        .flat_map(|k| enumerate_racks(EnumerationFilter::connected_quandles(k)).unwrap())
        .collect()
}

fn sym3_decomposition() -> Check {
    let reg = ClassRegistry::new();
    let s3 = RackTable::conjugation_quandle(&FinGroup::symmetric(3));
    let got = b_of(&reg, &s3).map_err(|e| e.to_string())?;
    let star = reg.register(&RackTable::singleton()).unwrap();
    let d3 = reg.register(&RackTable::dihedral(3)).unwrap();
    let want = BurnsideElement::term(3, star).add(&BurnsideElement::class(d3));
    ensure(got == want, || {
        format!("b(Sym(3)) = {}", reg.render(&got).unwrap())
    })
}

fn additivity_sweep() -> Check {
    let reg = ClassRegistry::new();
    let mut checked = 0;
    for r in racks_up_to(5) {
        let whole = b_of(&reg, &r).unwrap();
        for (s, t) in enumerate_decompositions(&r).map_err(|e| e.to_string())? {
            let bs = b_of(&reg, &r.restrict(&s).unwrap()).unwrap();
            let bt = b_of(&reg, &r.restrict(&t).unwrap()).unwrap();
            if whole != bs.add(&bt) {
                return Err(format!("additivity fails on {r:?} at {s:?}"));
            }
            checked += 1;
        }
    }
    ensure(checked > 0, || "no decompositions found".into())
}

fn adjective_table() -> Check {
    let perm_rack =
        |n, cycles: &[&[usize]]| RackTable::permutation_rack(&Perm::from_cycles(n, cycles).unwrap());
    let adjectives = |r: &RackTable| {
        (
            is_connected(r),
            is_homogeneous(r),
            is_irreducible(r),
            is_indecomposable(r).unwrap(),
        )
    };
    let cases = [
        (
            "(12)(34)",
            perm_rack(4, &[&[0, 1], &[2, 3]]),
            (false, true, true, false),
        ),
        (
            "irreducible, disconnected, inhomogeneous",
            perm_rack(3, &[&[0, 1]]),
            (false, false, true, false),
        ),
        (
            "reducible and homogeneous",
            RackTable::trivial(2),
            (false, true, false, false),
        ),
    ];
    for (name, r, want) in cases {
        let got = adjectives(&r);
        ensure(got == want, || format!("{name}: got {got:?}, want {want:?}"))?;
    }
    let t = RackTable::trivial(3);
    ensure(is_homogeneous(&t) && !is_connected(&t), || {
        "trivial(3) should be homogeneous and disconnected".into()
    })
}

fn orbit_oracle(r: usize, s: usize) -> CycleVector {
    let n = r * s;
    let image = |p: usize| ((p / s + 1) % r) * s + (p % s + 1) % s;
    let mut seen = vec![false; n];
    let mut out = CycleVector::zero();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = image(x);
            len += 1;
        }
        out.add_term(len as u64, 1);
    }
    out
}

fn cycle_ring() -> Check {
    for r in 1..=6u64 {
        for s in 1..=6u64 {
            let got = CycleVector::cycle(r).mul(&CycleVector::cycle(s));
            let want = orbit_oracle(r as usize, s as usize);
            ensure(got == want, || format!("c_{r}·c_{s} = {got}, oracle {want}"))?;
        }
    }
    let u = CycleVector::one().sub(&CycleVector::cycle(2));
    ensure(u.mul(&u) == CycleVector::one(), || "(1 - c_2)^2 != 1".into())?;
    let reg = ClassRegistry::new();
    for n in 1..=6 {
        let c = CycleVector::cycle(n);
        let back = retract_to_cycles(&reg, &section_perm(&reg, &c).unwrap()).unwrap();
        ensure(back == c, || format!("retraction of section of c_{n} is {back}"))?;
    }
    Ok(())
}

fn lambda_remark() -> Check {
    let reg = ClassRegistry::new();
    let x = BurnsideElement::class(reg.register(&RackTable::dihedral(3)).unwrap());
    let psi2 = psi_power(&reg, &x, 2).unwrap();
    let star = reg.register(&RackTable::singleton()).unwrap();
    ensure(psi2 == BurnsideElement::term(3, star), || {
        format!("Ψ²(x) = {}", reg.render(&psi2).unwrap())
    })?;
    let sq = mul(&reg, &x, &x).unwrap();
    let terms: Vec<_> = sq.iter().collect();
    ensure(
        terms.len() == 1 && terms[0].1 == 1 && reg.entry(terms[0].0).unwrap().order == 9,
        || format!("x² = {}", reg.render(&sq).unwrap()),
    )?;
    let e = epsilon(&reg, &psi2.sub(&sq));
    ensure(e == 3, || format!("ε(Ψ²(x) - x²) = {e}"))
}

fn marks_checks() -> Check {
    let d3 = RackTable::dihedral(3);
    let c = census(&d3, &d3);
    let brute = common::brute_morphisms(&common::table(&d3), &common::table(&d3));
    let brute_inj = brute
        .iter()
        .filter(|f| f.iter().collect::<BTreeSet<_>>().len() == 3)
        .count() as u64;
    ensure(
        (c.mor, c.inj, c.sur) == (9, 6, 6) && c.mor == brute.len() as u64 && c.inj == brute_inj,
        || format!("census(Dih3, Dih3) = ({}, {}, {})", c.mor, c.inj, c.sur),
    )?;
    let small = racks_up_to(3);
    for src in connected_up_to(3) {
        for r in &small {
            for s in &small {
                let sum = count_morphisms(&src, &r.disjoint_union(s));
                let parts = count_morphisms(&src, r) + count_morphisms(&src, s);
                ensure(sum == parts, || format!("additivity of Mor({src:?}, ·)"))?;
                let prod = count_morphisms(&src, &r.product(s));
                let factors = count_morphisms(&src, r) * count_morphisms(&src, s);
                ensure(prod == factors, || format!("multiplicativity of Mor({src:?}, ·)"))?;
            }
        }
    }
    let connected = connected_up_to(4);
    for src in &connected {
        for tgt in &connected {
            ensure(verify_triangular_recursion(src, tgt), || {
                format!("triangular recursion fails for {src:?} -> {tgt:?}")
            })?;
        }
    }
    Ok(())
}

fn mark_separation() -> Check {
    let classes = connected_up_to(4);
    let m = mark_matrix(&classes, &classes).map_err(|e| e.to_string())?;
    let columns: BTreeSet<Vec<u64>> = (0..classes.len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect();
    ensure(columns.len() == classes.len(), || {
        format!("{} distinct columns for {} classes", columns.len(), classes.len())
    })
}

fn cancellation() -> Check {
    let connected = connected_up_to(3);
    let quandles: Vec<RackTable> = (1..=3)
        .flat_map(|n| enumerate_racks(EnumerationFilter::quandles(n)).unwrap())
        .collect();
    for t in &quandles {
        for r in &connected {
            for s in &connected {
                if canonical_key(&r.product(t)) == canonical_key(&s.product(t)) && !are_isomorphic(r, s) {
                    return Err(format!("{r:?} x T = {s:?} x T for T = {t:?}"));
                }
            }
        }
    }
    Ok(())
}

fn sl2_counterexample() -> Check {
    let built = FinGroup::from_matrices(3, &sl2_generators(3)).unwrap();
    let g = parse_group(&format_group(&built)).map_err(|e| e.to_string())?;
    ensure(g.order() == 24, || format!("|SL2(F3)| = {}", g.order()))?;
    let u = built.index_of_matrix([1, 1, 0, 1]).unwrap();
    let mu = built.index_of_matrix([-1, -1, 0, -1]).unwrap();
    let h = g.subgroup_from(&[u]).unwrap();
    let rack = coset_rack(&g, &h, mu).map_err(|e| e.to_string())?.rack;
    ensure(rack.order() == 8, || format!("order {}", rack.order()))?;
    ensure(is_connected(&rack), || "not connected".into())?;
    let inn = inner_group(&rack).unwrap().order();
    ensure(inn == 24, || format!("|Inn| = {inn}"))?;
    let sigma = rack.canonical_automorphism();
    ensure(
        sigma.pow(2).is_identity() && (0..8).all(|x| sigma.apply(x) != x),
        || format!("σ = {sigma:?}"),
    )?;
    let order4 = enumerate_racks(EnumerationFilter::connected_quandles(4)).unwrap();
    ensure(order4.len() == 1, || {
        format!("{} connected quandles of order 4", order4.len())
    })?;
    let (q, _) = rack.associated_quandle();
    ensure(are_isomorphic(&q, &order4[0]), || "associated quandle".into())?;
    let rival = RackTable::cycle(2).product(&RackTable::tetrahedral());
    ensure(!are_isomorphic(&rack, &rival), || {
        "isomorphic to C2 x tetrahedral".into()
    })
}

fn cycle_times_quandle() -> Check {
    let mut keys = BTreeSet::new();
    let mut count = 0;
    for len in 1..=4 {
        let c = RackTable::cycle(len);
        for q in connected_quandles_up_to(4) {
            let p = c.product(&q);
            ensure(is_connected(&p), || format!("C{len} x {q:?} not connected"))?;
            keys.insert(canonical_key(&p));
            count += 1;
        }
    }
    ensure(keys.len() == count, || {
        format!("{} keys for {count} products", keys.len())
    })
}

fn prime_quandles() -> Check {
    let f = Factorizer::default();
    for q in connected_quandles_up_to(8) {
        if q.order() < 2 {
            continue;
        }
        let prime = f.is_prime_quandle(&q).map_err(|e| e.to_string())?;
        ensure(prime, || format!("{q:?} reported composite"))?;
    }
    let d3 = RackTable::dihedral(3);
    let fac = f.factor_quandle(&d3.product(&d3)).map_err(|e| e.to_string())?;
    let k = canonical_key(&d3);
    ensure(fac.factors == vec![k.clone(), k], || format!("{:?}", fac.factors))
}

fn enumeration_oracle() -> Check {
    for n in 0..=4 {
        for quandle in [false, true] {
            let filter = EnumerationFilter {
                order: n,
                quandle_only: quandle,
                connected_only: false,
            };
            let fast: BTreeSet<_> = enumerate_racks(filter)
                .unwrap()
                .iter()
                .map(canonical_key)
                .collect();
            let naive = common::naive_classes(n, quandle);
            let slow: BTreeSet<_> = naive
                .iter()
                .map(|t| canonical_key(&RackTable::from_rows(t).unwrap()))
                .collect();
            ensure(fast == slow && slow.len() == naive.len(), || {
                format!(
                    "order {n} quandle={quandle}: generator {} vs oracle {}",
                    fast.len(),
                    naive.len()
                )
            })?;
        }
    }
    Ok(())
}

fn crossed_round_trips() -> Check {
    for r in racks_up_to(4).into_iter().filter(|r| r.order() > 0) {
        let x = rack_to_crossed(&r).map_err(|e| e.to_string())?;
        let back = crossed_to_rack(&x).unwrap();
        ensure(back == r, || format!("round trip changed {r:?}"))?;
        let (f, y) = action_homomorphism(&x).map_err(|e| e.to_string())?;
        let w: Vec<usize> = (0..r.order()).collect();
        ensure(is_equivalence(&f, &w, &x, &y), || {
            format!("equivalence rejected for {r:?}")
        })?;
    }
    let g = FinGroup::symmetric(3);
    let mut subgroups = BTreeSet::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            subgroups.insert(g.subgroup_from(&[a, b]).unwrap());
        }
    }
    subgroups.insert(vec![0]);
    for h in subgroups {
        let rack = crossed_to_rack(&transitive_crossed(&g, &h, 0).unwrap()).unwrap();
        ensure(rack == RackTable::trivial(rack.order()), || {
            format!("[G/{h:?}, e] is not trivial")
        })?;
    }
    Ok(())
}

fn trefoil() -> Check {
    let p = PresentedQuandle::trefoil();
    let brute = |r: &RackTable| {
        let n = r.order();
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if r.op(a, b) == c && r.op(b, c) == a && r.op(c, a) == b {
                        count += 1;
                    }
                }
            }
        }
        count
    };
    let d3 = RackTable::dihedral(3);
    let got = colorings(&p, &d3);
    ensure(got == 9 && brute(&d3) == 9, || format!("Dih(3): {got}"))?;
    for n in 1..=5 {
        let t = RackTable::trivial(n);
        let got = colorings(&p, &t);
        ensure(got == n as u64 && brute(&t) == n as u64, || {
            format!("trivial({n}): {got}")
        })?;
    }
    Ok(())
}

fn main() {
    let checks: [(&str, Criterion); 14] = [
        ("Sym(3) decomposition", sym3_decomposition),
        ("additivity over decompositions, order <= 5", additivity_sweep),
        ("adjective counterexamples", adjective_table),
        ("B(Z) arithmetic", cycle_ring),
        ("power operation and epsilon", lambda_remark),
        ("morphism census and recursion", marks_checks),
        ("mark separation, order <= 4", mark_separation),
        ("cancellation, order <= 3", cancellation),
        ("SL2(F3) coset rack", sl2_counterexample),
        ("cycle x quandle injectivity", cycle_times_quandle),
        ("prime quandles, order <= 8", prime_quandles),
        ("enumeration against naive oracle", enumeration_oracle),
        ("crossed round trips", crossed_round_trips),
        ("trefoil colorings", trefoil),
    ];
    let mut failures = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failures, checks.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
