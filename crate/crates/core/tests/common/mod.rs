//! Brute-force oracles shared by the integration and acceptance tests. They
//! use only table access from the library, never its search code.
#![allow(dead_code)]

use rackring::RackTable;

/// All permutations of `0..n` as image vectors, by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn table(r: &RackTable) -> Vec<Vec<usize>> {
    r.to_rows()
}

pub fn is_rack_table(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| {
        let mut seen = vec![false; n];
        t[a].iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }) && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[a][t[b][c]] == t[t[a][b]][t[a][c]])))
}

/// Whether `p` carries table `a` onto table `b`.
pub fn carries(a: &[Vec<usize>], b: &[Vec<usize>], p: &[usize]) -> bool {
    let n = a.len();
    (0..n).all(|x| (0..n).all(|y| p[a[x][y]] == b[p[x]][p[y]]))
}

pub fn brute_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    a.len() == b.len() && permutations(a.len()).iter().any(|p| carries(a, b, p))
}

pub fn brute_automorphism_count(a: &[Vec<usize>]) -> usize {
    permutations(a.len()).iter().filter(|p| carries(a, a, p)).count()
}

fn invariant(t: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = t.len();
    let mut v: Vec<(usize, usize)> = (0..n)
        .map(|a| {
            (
                (0..n).filter(|&b| t[a][b] == b).count(),
                usize::from(t[a][a] == a),
            )
        })
        .collect();
    v.sort_unstable();
    v
}

/// Isomorphism classes of racks (or quandles) of order `n`: every table
/// with permutation rows is tested against the axioms, and survivors are
/// deduplicated by pairwise brute-force isomorphism.
type Class = (Vec<(usize, usize)>, Vec<Vec<usize>>);

pub fn naive_classes(n: usize, quandle_only: bool) -> Vec<Vec<Vec<usize>>> {
    let perms = permutations(n);
    let mut classes: Vec<Class> = Vec::new();
    let choices: Vec<Vec<&Vec<usize>>> = (0..n)
        .map(|a| perms.iter().filter(|p| !quandle_only || p[a] == a).collect())
        .collect();
    let mut idx = vec![0usize; n];
    loop {
        let t: Vec<Vec<usize>> = (0..n).map(|a| choices[a][idx[a]].clone()).collect();
        if is_rack_table(&t) {
            let inv = invariant(&t);
            if !classes.iter().any(|(i, c)| *i == inv && brute_isomorphic(c, &t)) {
                classes.push((inv, t));
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return classes.into_iter().map(|(_, t)| t).collect();
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Number of maps `c → r` preserving the operation, over all `|r|^|c|` maps.
pub fn brute_morphisms(c: &[Vec<usize>], r: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (m, n) = (c.len(), r.len());
    let mut out = Vec::new();
    if n == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut f = vec![0usize; m];
    loop {
        if (0..m).all(|x| (0..m).all(|y| f[c[x][y]] == r[f[x]][f[y]])) {
            out.push(f.clone());
        }
        let mut k = 0;
        loop {
            if k == m {
                return out;
            }
            f[k] += 1;
            if f[k] < n {
                break;
            }
            f[k] = 0;
            k += 1;
        }
    }
}

/// Orbits of the group generated by the rows of `t`, found by flooding.
pub fn brute_orbit_count(t: &[Vec<usize>]) -> usize {
    let n = t.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for row in t {
                let y = row[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

pub fn brute_is_connected(t: &[Vec<usize>]) -> bool {
    !t.is_empty() && brute_orbit_count(t) == 1
}
