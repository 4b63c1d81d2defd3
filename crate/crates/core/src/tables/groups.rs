//! Small concrete groups.
//!
//! Encodings: cyclic groups use residues; `Z2^k` uses bit vectors under xor;
//! `S_n` lists permutations lexicographically with `(p·q)(i) = p(q(i))`;
//! a direct product sends `(a, b)` to `a·|G2| + b`; the semidirect product
//! `(Z3)^s ⋊ Z2` sends `(v, α)` to `α·3^s + v` with `v` read in base 3.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GroupTable, TableError, ORDER_CAP};

/// A group family member. Serialized as its short name, e.g. `"Z4xZ2"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GroupKind {
    Cyclic { n: usize },
    ElementaryAbelian2 { k: usize },
    Symmetric { n: usize },
    DirectProduct { left: Box<GroupKind>, right: Box<GroupKind> },
    Gf3Semidirect { s: usize },
}

impl GroupKind {
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupKind::Cyclic { n } => Some(*n),
            GroupKind::ElementaryAbelian2 { k } => 1usize.checked_shl(*k as u32),
            GroupKind::Symmetric { n } => (1..=*n).try_fold(1usize, |a, b| a.checked_mul(b)),
            GroupKind::DirectProduct { left, right } => left.order()?.checked_mul(right.order()?),
            GroupKind::Gf3Semidirect { s } => 3usize.checked_pow(*s as u32)?.checked_mul(2),
        }
    }

    pub fn product(left: GroupKind, right: GroupKind) -> GroupKind {
        GroupKind::DirectProduct { left: Box::new(left), right: Box::new(right) }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic { n } => write!(f, "Z{n}"),
            GroupKind::ElementaryAbelian2 { k } => write!(f, "Z2^{k}"),
            GroupKind::Symmetric { n } => write!(f, "S{n}"),
            GroupKind::DirectProduct { left, right } => write!(f, "{left}x{right}"),
            GroupKind::Gf3Semidirect { s } => write!(f, "GF3^{s}:2"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TableError::UnsupportedParams(format!("unknown group name {s:?}"));
        let parts: Vec<&str> = s.trim().split('x').collect();
        if parts.len() > 1 {
            let mut kinds = parts.into_iter().map(str::parse::<GroupKind>);
            let first = kinds.next().ok_or_else(bad)??;
            return kinds.try_fold(first, |acc, k| Ok(GroupKind::product(acc, k?)));
        }
        let s = s.trim();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("GF3^") {
            let s_val = rest.strip_suffix(":2").ok_or_else(bad)?;
            return Ok(GroupKind::Gf3Semidirect { s: num(s_val)? });
        }
        if let Some(rest) = s.strip_prefix("Z2^") {
            return Ok(GroupKind::ElementaryAbelian2 { k: num(rest)? });
        }
        if let Some(rest) = s.strip_prefix('Z') {
            return Ok(GroupKind::Cyclic { n: num(rest)? });
        }
        if let Some(rest) = s.strip_prefix('S') {
            return Ok(GroupKind::Symmetric { n: num(rest)? });
        }
        Err(bad())
    }
}

impl TryFrom<String> for GroupKind {
    type Error = TableError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<GroupKind> for String {
    fn from(k: GroupKind) -> String {
        k.to_string()
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn symmetric_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn make_group(kind: &GroupKind) -> Result<GroupTable, TableError> {
    let unsupported = |why: &str| TableError::UnsupportedParams(format!("{kind}: {why}"));
    let order = kind.order().ok_or_else(|| unsupported("order overflows"))?;
    if order > ORDER_CAP {
        return Err(TableError::OrderCap { order, cap: ORDER_CAP });
    }
    match kind {
        GroupKind::Cyclic { n } => {
            if *n == 0 {
                return Err(unsupported("cyclic order must be positive"));
            }
            GroupTable::from_fn(*n, |x, y| (x + y) % n)
        }
        GroupKind::ElementaryAbelian2 { .. } => GroupTable::from_fn(order, |x, y| x ^ y),
        GroupKind::Symmetric { n } => {
            if *n == 0 || *n > 4 {
                return Err(unsupported("symmetric groups are provided for 1 <= n <= 4"));
            }
            let perms = symmetric_permutations(*n);
            let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
            GroupTable::from_fn(perms.len(), |x, y| {
                let composed: Vec<usize> = (0..*n).map(|i| perms[x][perms[y][i]]).collect();
                index(&composed)
            })
        }
        GroupKind::DirectProduct { left, right } => {
            let g1 = make_group(left)?;
            let g2 = make_group(right)?;
            let m = g2.order();
            GroupTable::from_fn(order, |x, y| g1.mul(x / m, y / m) * m + g2.mul(x % m, y % m))
        }
        GroupKind::Gf3Semidirect { s } => {
            let v = 3usize.pow(*s as u32);
            let digits = |mut x: usize| {
                let mut d = vec![0usize; *s];
                for slot in d.iter_mut() {
                    *slot = x % 3;
                    x /= 3;
                }
                d
            };
            let pack = |d: &[usize]| d.iter().rev().fold(0, |acc, &z| acc * 3 + z);
            GroupTable::from_fn(order, |x, y| {
                let (a, b) = (x / v, y / v);
                let (dx, dy) = (digits(x % v), digits(y % v));
                // (v, a)(w, b) = (v + (-1)^a w, a + b)
                let sum: Vec<usize> =
                    dx.iter().zip(&dy).map(|(&p, &q)| if a == 0 { (p + q) % 3 } else { (p + 3 - q) % 3 }).collect();
                ((a + b) % 2) * v + pack(&sum)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::find_isomorphism;

    #[test]
    fn names_round_trip() {
        for name in ["Z1", "Z8", "Z2^3", "S4", "Z4xZ2", "GF3^2:2", "Z2xS3xZ3"] {
            let k: GroupKind = name.parse().unwrap();
            assert_eq!(k.to_string(), name);
        }
        assert!("Q8".parse::<GroupKind>().is_err());
        assert!("Z".parse::<GroupKind>().is_err());
    }

    #[test]
    fn orders() {
        for (name, order) in [("Z1", 1), ("Z2^2", 4), ("S3", 6), ("S4", 24), ("GF3^3:2", 54), ("Z4xZ2", 8)] {
            let g = make_group(&name.parse().unwrap()).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }

    #[test]
    fn unsupported_parameters() {
        assert!(matches!(make_group(&GroupKind::Symmetric { n: 5 }), Err(TableError::UnsupportedParams(_))));
        assert!(matches!(make_group(&GroupKind::Cyclic { n: 0 }), Err(TableError::UnsupportedParams(_))));
        assert!(matches!(make_group(&GroupKind::Cyclic { n: 5000 }), Err(TableError::OrderCap { .. })));
    }

    #[test]
    fn gf3_semidirect_of_rank_one_is_s3() {
        let a = make_group(&GroupKind::Gf3Semidirect { s: 1 }).unwrap();
        let b = make_group(&GroupKind::Symmetric { n: 3 }).unwrap();
        assert!(find_isomorphism(a.as_loop(), b.as_loop()).is_some());
        let z6 = make_group(&GroupKind::Cyclic { n: 6 }).unwrap();
        assert!(find_isomorphism(a.as_loop(), z6.as_loop()).is_none());
    }

    #[test]
    fn semidirect_elements_off_v_are_involutions() {
        let g = make_group(&GroupKind::Gf3Semidirect { s: 2 }).unwrap();
        for x in 9..18 {
            assert_eq!(g.element_order(x), 2);
        }
        for x in 1..9 {
            assert_eq!(g.element_order(x), 3);
        }
    }

    #[test]
    fn serde_uses_short_names() {
        let k: GroupKind = serde_json::from_str("\"Z4xZ2\"").unwrap();
        assert_eq!(serde_json::to_string(&k).unwrap(), "\"Z4xZ2\"");
    }
}
