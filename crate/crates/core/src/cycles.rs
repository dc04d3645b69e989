//! The Burnside ring of finite permutations.
//!
//! An element is a finitely supported integer combination of the classes
//! `c_n` of the `n`-cycles. Multiplication is the bilinear extension of
//! `c_r * c_s = gcd(r, s) * c_lcm(r, s)`, with unit `c_1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sparse integer vector over cycle lengths.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleVector {
    coeffs: BTreeMap<u64, i64>,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl CycleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `c_1`.
    pub fn one() -> Self {
        Self::cycle(1)
    }

    /// The basis element `c_n`.
    pub fn cycle(n: u64) -> Self {
        Self::term(1, n)
    }

    pub fn term(coeff: i64, n: u64) -> Self {
        assert!(n >= 1, "cycle lengths are positive");
        let mut v = Self::zero();
        v.add_term(n, coeff);
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut v = Self::zero();
        for (n, c) in pairs {
            v.add_term(n, c);
        }
        v
    }

    pub fn add_term(&mut self, n: u64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(n).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: u64) -> i64 {
        self.coeffs.get(&n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in other.iter() {
            out.add_term(n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_pairs(self.iter().map(|(n, c)| (n, c * k)))
    }

    /// Product in the Burnside ring of permutations.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (r, a) in self.iter() {
            for (s, b) in other.iter() {
                out.add_term(lcm(r, s), a * b * gcd(r, s) as i64);
            }
        }
        out
    }

    /// Augmentation: the number of points, `sum n * coeff`.
    pub fn cardinality(&self) -> i64 {
        self.iter().map(|(n, c)| n as i64 * c).sum()
    }

    /// Render as `k^c` factors, the usual notation for a cycle type.
    pub fn cycle_type_string(&self) -> String {
        if self.is_zero() {
            return "-".to_string();
        }
        self.iter()
            .map(|(n, c)| format!("{n}^{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for CycleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.iter().map(|(n, c)| format!("{c}*c{n}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl FromStr for CycleVector {
    type Err = Error;

    /// Parses the `a1*c1 + a2*c2` rendering (also accepts `0`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = |m: &str| Error::Parse {
            line: 1,
            message: format!("bad cycle vector term {m:?}"),
        };
        let mut v = Self::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            let (c, n) = term.split_once("*c").ok_or_else(|| bad(term))?;
            let c: i64 = c.trim().parse().map_err(|_| bad(term))?;
            let n: u64 = n.trim().parse().map_err(|_| bad(term))?;
            if n == 0 {
                return Err(bad(term));
            }
            v.add_term(n, c);
        }
        Ok(v)
    }
}
