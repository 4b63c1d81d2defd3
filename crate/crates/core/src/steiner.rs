//! Steiner triple systems and Steiner loops.
//!
//! Points are `1..=n`; index 0 is the loop identity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tables::{LoopTable, TableError, ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinerError {
    #[error("pair {{{0}, {1}}} lies in no block")]
    PairMissing(usize, usize),
    #[error("pair {{{0}, {1}}} lies in more than one block")]
    PairDuplicated(usize, usize),
    #[error("block {block:?} is invalid: {reason}")]
    BadBlock { block: Vec<usize>, reason: String },
    #[error("no Steiner triple system has {0} points (need n = 1 or 3 mod 6)")]
    BadResidue(usize),
    #[error("{points} points exceed the order cap {cap}")]
    OrderCap { points: usize, cap: usize },
    #[error("not a Steiner loop: ({x}, {y}) violates xy = yx or x(xy) = y")]
    NotSteiner { x: usize, y: usize },
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Unvalidated wire form `{"n": n, "blocks": [[a, b, c], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StsJson {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

/// A validated triple system with blocks in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StsJson")]
pub struct SteinerTripleSystem {
    n: usize,
    blocks: Vec<[usize; 3]>,
}

impl From<&SteinerTripleSystem> for StsJson {
    fn from(s: &SteinerTripleSystem) -> Self {
        StsJson { n: s.n, blocks: s.blocks.iter().map(|b| b.to_vec()).collect() }
    }
}

impl TryFrom<StsJson> for SteinerTripleSystem {
    type Error = SteinerError;
    fn try_from(raw: StsJson) -> Result<Self, Self::Error> {
        let mut blocks = Vec::with_capacity(raw.blocks.len());
        for b in raw.blocks {
            let arr: [usize; 3] = b
                .clone()
                .try_into()
                .map_err(|_| SteinerError::BadBlock { block: b, reason: "a block has exactly three points".into() })?;
            blocks.push(arr);
        }
        validate_sts(raw.n, blocks)
    }
}

impl SteinerTripleSystem {
    pub fn point_count(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[[usize; 3]] {
        &self.blocks
    }

    /// Third point of the block through distinct points `p` and `q`.
    pub fn third_point(&self, p: usize, q: usize) -> Option<usize> {
        self.blocks.iter().find_map(|b| {
            if b.contains(&p) && b.contains(&q) && p != q {
                b.iter().copied().find(|&r| r != p && r != q)
            } else {
                None
            }
        })
    }
}

pub fn validate_sts(n: usize, blocks: Vec<[usize; 3]>) -> Result<SteinerTripleSystem, SteinerError> {
    if n + 1 > ORDER_CAP {
        return Err(SteinerError::OrderCap { points: n, cap: ORDER_CAP - 1 });
    }
    let mut seen = vec![false; (n + 1) * (n + 1)];
    let mut canonical = Vec::with_capacity(blocks.len());
    for b in blocks {
        let mut s = b;
        s.sort_unstable();
        if s[0] == 0 || s[2] > n {
            return Err(SteinerError::BadBlock { block: b.to_vec(), reason: format!("points must lie in 1..={n}") });
        }
        if s[0] == s[1] || s[1] == s[2] {
            return Err(SteinerError::BadBlock { block: b.to_vec(), reason: "points must be distinct".into() });
        }
        for (p, q) in [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])] {
            let cell = &mut seen[p * (n + 1) + q];
            if *cell {
                return Err(SteinerError::PairDuplicated(p, q));
            }
            *cell = true;
        }
        canonical.push(s);
    }
    for p in 1..=n {
        for q in p + 1..=n {
            if !seen[p * (n + 1) + q] {
                return Err(SteinerError::PairMissing(p, q));
            }
        }
    }
    canonical.sort_unstable();
    Ok(SteinerTripleSystem { n, blocks: canonical })
}

/// Bose construction for `n ≡ 3 (mod 6)`, Skolem construction for
/// `n ≡ 1 (mod 6)`.
pub fn construct_sts(n: usize) -> Result<SteinerTripleSystem, SteinerError> {
    if n + 1 > ORDER_CAP {
        return Err(SteinerError::OrderCap { points: n, cap: ORDER_CAP - 1 });
    }
    let blocks = match n % 6 {
        _ if n == 0 => Vec::new(),
        3 => bose(n / 3),
        1 => skolem((n - 1) / 6),
        _ => return Err(SteinerError::BadResidue(n)),
    };
    validate_sts(n, blocks)
}

fn bose(v: usize) -> Vec<[usize; 3]> {
    let pt = |a: usize, i: usize| 1 + a + v * (i % 3);
    let half = v.div_ceil(2);
    let op = |a: usize, b: usize| (a + b) * half % v;
    let mut blocks: Vec<[usize; 3]> = (0..v).map(|a| [pt(a, 0), pt(a, 1), pt(a, 2)]).collect();
    for a in 0..v {
        for b in a + 1..v {
            for i in 0..3 {
                blocks.push([pt(a, i), pt(b, i), pt(op(a, b), i + 1)]);
            }
        }
    }
    blocks
}

fn skolem(k: usize) -> Vec<[usize; 3]> {
    let m = 2 * k;
    let infinity = 3 * m + 1;
    let pt = |a: usize, i: usize| 1 + a + m * (i % 3);
    let op = |a: usize, b: usize| {
        let s = (a + b) % m;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            (s - 1) / 2 + k
        }
    };
    let mut blocks: Vec<[usize; 3]> = (0..k).map(|x| [pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for x in 0..k {
        for i in 0..3 {
            blocks.push([infinity, pt(k + x, i), pt(x, i + 1)]);
        }
    }
    for x in 0..m {
        for y in x + 1..m {
            for i in 0..3 {
                blocks.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// The Steiner loop on `{e} ∪ points`: `x·x = e`, `x·y` the third point.
pub fn loop_from_sts(s: &SteinerTripleSystem) -> LoopTable {
    let n = s.n + 1;
    let mut third = vec![0usize; n * n];
    for &[a, b, c] in &s.blocks {
        for (p, q, r) in [(a, b, c), (b, a, c), (a, c, b), (c, a, b), (b, c, a), (c, b, a)] {
            third[p * n + q] = r;
        }
    }
    LoopTable::from_fn(n, |x, y| match (x, y) {
        (0, _) => y,
        (_, 0) => x,
        _ if x == y => 0,
        _ => third[x * n + y],
    })
    .expect("a Steiner triple system always yields a loop")
}

/// Least pair violating `xy = yx` or `x(xy) = y`.
pub fn steiner_witness(l: &LoopTable) -> Option<(usize, usize)> {
    let n = l.order();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| l.mul(x, y) != l.mul(y, x) || l.mul(x, l.mul(x, y)) != y)
}

pub fn is_steiner_loop(l: &LoopTable) -> bool {
    steiner_witness(l).is_none()
}

pub fn sts_from_loop(l: &LoopTable) -> Result<SteinerTripleSystem, SteinerError> {
    if let Some((x, y)) = steiner_witness(l) {
        return Err(SteinerError::NotSteiner { x, y });
    }
    let n = l.order();
    let mut blocks = Vec::new();
    for x in 1..n {
        for y in x + 1..n {
            let z = l.mul(x, y);
            if z > y {
                blocks.push([x, y, z]);
            }
        }
    }
    validate_sts(n - 1, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{make_group, GroupKind};

    fn fano() -> Vec<[usize; 3]> {
        vec![[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]]
    }

    #[test]
    fn single_block_and_fano_validate() {
        assert_eq!(validate_sts(3, vec![[1, 2, 3]]).unwrap().blocks().len(), 1);
        assert_eq!(validate_sts(7, fano()).unwrap().blocks().len(), 7);
    }

    #[test]
    fn removing_a_fano_block_leaves_a_pair_uncovered() {
        let mut b = fano();
        b.remove(3);
        assert_eq!(validate_sts(7, b).unwrap_err(), SteinerError::PairMissing(2, 4));
    }

    #[test]
    fn malformed_blocks() {
        assert!(matches!(validate_sts(3, vec![[1, 1, 2]]), Err(SteinerError::BadBlock { .. })));
        assert!(matches!(validate_sts(3, vec![[0, 1, 2]]), Err(SteinerError::BadBlock { .. })));
        assert!(matches!(validate_sts(3, vec![[1, 2, 4]]), Err(SteinerError::BadBlock { .. })));
        assert_eq!(validate_sts(3, vec![[1, 2, 3], [3, 2, 1]]).unwrap_err(), SteinerError::PairDuplicated(1, 2));
    }

    #[test]
    fn constructions_have_the_right_block_counts() {
        for n in [0, 1, 3, 7, 9, 13, 15, 19, 21, 25, 27] {
            let s = construct_sts(n).unwrap();
            assert_eq!(s.blocks().len(), n * n.saturating_sub(1) / 6, "n = {n}");
        }
        assert_eq!(construct_sts(3).unwrap().blocks(), &[[1, 2, 3]]);
    }

    #[test]
    fn bad_residues_and_cap() {
        for n in [2, 4, 5, 6, 8, 11, 12] {
            assert_eq!(construct_sts(n).unwrap_err(), SteinerError::BadResidue(n));
        }
        assert!(matches!(construct_sts(4101), Err(SteinerError::OrderCap { .. })));
    }

    #[test]
    fn small_steiner_loops() {
        let l3 = loop_from_sts(&construct_sts(3).unwrap());
        let klein = make_group(&GroupKind::ElementaryAbelian2 { k: 2 }).unwrap();
        assert_eq!(l3.rows(), klein.rows());
        assert!(loop_from_sts(&validate_sts(7, fano()).unwrap()).is_associative());
        let l9 = loop_from_sts(&construct_sts(9).unwrap());
        assert_eq!(l9.order(), 10);
        assert!(!l9.is_associative());
    }

    #[test]
    fn round_trips() {
        for s in [construct_sts(3).unwrap(), validate_sts(7, fano()).unwrap(), construct_sts(9).unwrap()] {
            assert_eq!(sts_from_loop(&loop_from_sts(&s)).unwrap(), s);
        }
    }

    #[test]
    fn steiner_loop_recognition() {
        let z2 = make_group(&GroupKind::Cyclic { n: 2 }).unwrap();
        assert!(is_steiner_loop(z2.as_loop()));
        let z4 = make_group(&GroupKind::Cyclic { n: 4 }).unwrap();
        assert_eq!(steiner_witness(z4.as_loop()), Some((1, 0)));
        assert!(matches!(sts_from_loop(z4.as_loop()), Err(SteinerError::NotSteiner { .. })));
        assert!(is_steiner_loop(&loop_from_sts(&construct_sts(9).unwrap())));
    }

    #[test]
    fn json_shape() {
        let s = construct_sts(7).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with("{\"n\":7,\"blocks\":[[1,"));
        let back: SteinerTripleSystem = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let broken = r#"{"n": 7, "blocks": [[1,2,3]]}"#;
        assert!(serde_json::from_str::<SteinerTripleSystem>(broken).is_err());
    }
}
