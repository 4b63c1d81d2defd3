//! Finite magmas, loops and groups given by Cayley tables.
//!
//! Every carrier in the crate is one of the three table types defined here.
//! Elements are indices `0..order`; a validated loop always has its identity
//! at index 0.

mod groups;
mod iso;
mod subsets;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use groups::{make_group, symmetric_permutations, GroupKind};
pub use iso::{find_isomorphism, isomorphisms};
pub use subsets::{
    centre, derived_subloop, is_subloop, nuclei, quotient_group, quotient_loop, subgroup_generated, subloop_generated,
    subtable, Nuclei, Quotient, SubsetLabel, SubsetReport,
};

/// Largest table order any operation accepts.
pub const ORDER_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Line {
    Row,
    Column,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("table must be a non-empty square array: {0}")]
    Shape(String),
    #[error("entry ({row}, {col}) = {value} is not an element index")]
    BadIndex { row: usize, col: usize, value: usize },
    #[error("not a Latin square: {line} {index} repeats the value {value}")]
    NotLatin { line: Line, index: usize, value: usize },
    #[error("element {0} is not a two-sided identity")]
    NoIdentity(usize),
    #[error("not associative: ({0}·{1})·{2} != {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
    #[error("subset is not closed: {0}·{1} leaves it")]
    NotClosed(usize, usize),
    #[error("subloop is not normal: cosets of {x} and {y} do not multiply to a single coset")]
    NotNormal { x: usize, y: usize },
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
}

/// An `n × n` table of element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MagmaTable {
    order: usize,
    cells: Vec<u16>,
}

impl std::fmt::Debug for MagmaTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MagmaTable").field("order", &self.order).field("rows", &self.rows()).finish()
    }
}

impl MagmaTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let order = rows.len();
        check_order(order)?;
        let mut cells = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(TableError::Shape(format!("row {r} has {} entries, expected {order}", row.len())));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(TableError::BadIndex { row: r, col: c, value: v });
                }
                cells.push(v as u16);
            }
        }
        Ok(Self { order, cells })
    }

    pub fn from_fn(order: usize, mut op: impl FnMut(usize, usize) -> usize) -> Result<Self, TableError> {
        check_order(order)?;
        let mut cells = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                let v = op(r, c);
                if v >= order {
                    return Err(TableError::BadIndex { row: r, col: c, value: v });
                }
                cells.push(v as u16);
            }
        }
        Ok(Self { order, cells })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Row-major cells, `n²` of them.
    pub fn from_cells(order: usize, cells: Vec<u16>) -> Result<Self, TableError> {
        check_order(order)?;
        if cells.len() != order * order {
            return Err(TableError::Shape(format!("{} cells, expected {}", cells.len(), order * order)));
        }
        if let Some(i) = cells.iter().position(|&v| v as usize >= order) {
            return Err(TableError::BadIndex { row: i / order, col: i % order, value: cells[i] as usize });
        }
        Ok(Self { order, cells })
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y] as usize
    }

    /// The products `x·y` for every `y`.
    #[inline]
    pub fn row(&self, x: usize) -> &[u16] {
        &self.cells[x * self.order..(x + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(|row| row.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Renames every element `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> MagmaTable {
        let n = self.order;
        let mut cells = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[perm[x] * n + perm[y]] = perm[self.get(x, y)] as u16;
            }
        }
        MagmaTable { order: n, cells }
    }
}

fn check_order(order: usize) -> Result<(), TableError> {
    if order == 0 {
        return Err(TableError::Shape("order must be positive".into()));
    }
    if order > ORDER_CAP {
        return Err(TableError::OrderCap { order, cap: ORDER_CAP });
    }
    Ok(())
}

/// A finite loop with identity 0, carrying its two division tables.
#[derive(Clone, PartialEq, Eq)]
pub struct LoopTable {
    magma: MagmaTable,
    // ldiv[a*n + b] = a\b, rdiv[b*n + a] = b/a
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
}

impl std::fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("LoopTable").field(&self.magma).finish()
    }
}

/// Checks the loop axioms and renumbers `identity` to index 0.
pub fn validate_loop(m: MagmaTable, identity: usize) -> Result<LoopTable, TableError> {
    let n = m.order();
    if identity >= n {
        return Err(TableError::BadIndex { row: identity, col: identity, value: identity });
    }
    let m = if identity == 0 {
        m
    } else {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, identity);
        m.relabel(&perm)
    };
    for x in 0..n {
        if m.get(0, x) != x || m.get(x, 0) != x {
            return Err(TableError::NoIdentity(identity));
        }
    }
    let mut ldiv = vec![u16::MAX; n * n];
    let mut rdiv = vec![u16::MAX; n * n];
    for a in 0..n {
        for y in 0..n {
            let b = m.get(a, y);
            let slot = &mut ldiv[a * n + b];
            if *slot != u16::MAX {
                return Err(TableError::NotLatin { line: Line::Row, index: a, value: b });
            }
            *slot = y as u16;
        }
    }
    for a in 0..n {
        for x in 0..n {
            let b = m.get(x, a);
            let slot = &mut rdiv[b * n + a];
            if *slot != u16::MAX {
                return Err(TableError::NotLatin { line: Line::Column, index: a, value: b });
            }
            *slot = x as u16;
        }
    }
    Ok(LoopTable { magma: m, ldiv, rdiv })
}

impl LoopTable {
    /// Builds and validates a loop whose identity is already index 0.
    pub fn from_fn(order: usize, op: impl FnMut(usize, usize) -> usize) -> Result<Self, TableError> {
        validate_loop(MagmaTable::from_fn(order, op)?, 0)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.magma.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.magma.get(x, y)
    }

    /// `a\b`, the unique `y` with `a·y = b`.
    #[inline]
    pub fn row(&self, x: usize) -> &[u16] {
        self.magma.row(x)
    }

    #[inline]
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.order() + b] as usize
    }

    /// `b/a`, the unique `x` with `x·a = b`.
    #[inline]
    pub fn right_div(&self, b: usize, a: usize) -> usize {
        self.rdiv[b * self.order() + a] as usize
    }

    /// `x^λ = e/x`.
    #[inline]
    pub fn left_inverse(&self, x: usize) -> usize {
        self.right_div(0, x)
    }

    /// `x^ρ = x\e`.
    #[inline]
    pub fn right_inverse(&self, x: usize) -> usize {
        self.left_div(x, 0)
    }

    pub fn magma(&self) -> &MagmaTable {
        &self.magma
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.magma.rows()
    }

    /// Lexicographically least `(x, y, z)` with `(xy)z != x(yz)`.
    pub fn associativity_witness(&self) -> Option<[usize; 3]> {
        let n = self.order();
        for x in 1..n {
            for y in 1..n {
                let xy = self.mul(x, y);
                for z in 1..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Left-power order: least `k` with `(..((x·x)·x)..)·x = e` (k factors),
    /// or 0 if the left powers cycle without reaching the identity.
    pub fn left_power_order(&self, x: usize) -> usize {
        let mut p = x;
        for k in 1..=self.order() {
            if p == 0 {
                return k;
            }
            p = self.mul(p, x);
        }
        0
    }
}

/// A loop that has been checked to be associative, with its inverse map.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: LoopTable,
    inverse: Vec<u16>,
    central: Vec<bool>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("GroupTable").field(&self.table.magma).finish()
    }
}

impl GroupTable {
    pub fn from_loop(table: LoopTable) -> Result<Self, TableError> {
        if let Some([x, y, z]) = table.associativity_witness() {
            return Err(TableError::NotAssociative(x, y, z));
        }
        let n = table.order();
        let inverse = (0..n).map(|x| table.right_inverse(x) as u16).collect();
        let central = (0..n).map(|z| (0..n).all(|x| table.mul(z, x) == table.mul(x, z))).collect();
        Ok(Self { table, inverse, central })
    }

    pub fn from_fn(order: usize, op: impl FnMut(usize, usize) -> usize) -> Result<Self, TableError> {
        Self::from_loop(LoopTable::from_fn(order, op)?)
    }

    pub fn as_loop(&self) -> &LoopTable {
        &self.table
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    #[inline]
    pub fn mul3(&self, x: usize, y: usize, z: usize) -> usize {
        self.mul(self.mul(x, y), z)
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    pub fn inverse_map(&self) -> Vec<usize> {
        self.inverse.iter().map(|&v| v as usize).collect()
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut p = x;
        let mut k = 1;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    #[inline]
    pub fn is_central(&self, x: usize) -> bool {
        self.central[x]
    }

    pub fn centre_members(&self) -> Vec<usize> {
        (0..self.order()).filter(|&z| self.central[z]).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.central.iter().all(|&c| c)
    }

    #[inline]
    pub fn commute(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.product(&[self.inv(a), self.inv(b), a, b])
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul3(self.inv(g), x, g)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.rows()
    }
}

/// Wire format for tables: `{"order": n, "table": [[...]], "identity": i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub identity: usize,
}

impl TableJson {
    pub fn into_loop(self) -> Result<LoopTable, TableError> {
        if self.table.len() != self.order {
            return Err(TableError::Shape(format!("order {} but {} rows", self.order, self.table.len())));
        }
        validate_loop(MagmaTable::new(self.table)?, self.identity)
    }

    pub fn into_group(self) -> Result<GroupTable, TableError> {
        GroupTable::from_loop(self.into_loop()?)
    }
}

impl From<&MagmaTable> for TableJson {
    fn from(m: &MagmaTable) -> Self {
        TableJson { order: m.order(), table: m.rows(), identity: 0 }
    }
}

impl From<&LoopTable> for TableJson {
    fn from(l: &LoopTable) -> Self {
        l.magma().into()
    }
}

impl From<&GroupTable> for TableJson {
    fn from(g: &GroupTable) -> Self {
        g.as_loop().into()
    }
}

/// `element_order` as a free function, for symmetry with the other queries.
pub fn element_order(g: &GroupTable, x: usize) -> usize {
    g.element_order(x)
}

pub fn is_associative(l: &LoopTable) -> bool {
    l.is_associative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = make_group(&GroupKind::Symmetric { n: 3 }).unwrap();
        let text = serde_json::to_string(&TableJson::from(&g)).unwrap();
        assert!(text.starts_with("{\"order\":6,\"table\":[[0,1,2,3,4,5],"));
        let back: TableJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_group().unwrap(), g);
    }

    #[test]
    fn z2_is_a_valid_loop() {
        let m = MagmaTable::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let l = validate_loop(m, 0).unwrap();
        assert_eq!(l.order(), 2);
        assert!(l.is_associative());
    }

    #[test]
    fn duplicated_entry_is_not_latin() {
        let m = MagmaTable::new(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(matches!(validate_loop(m, 0), Err(TableError::NotLatin { .. })));
    }

    #[test]
    fn bad_index_and_shape() {
        assert!(matches!(
            MagmaTable::new(vec![vec![0, 2], vec![1, 0]]),
            Err(TableError::BadIndex { row: 0, col: 1, value: 2 })
        ));
        assert!(matches!(MagmaTable::new(vec![vec![0], vec![0]]), Err(TableError::Shape(_))));
        assert!(matches!(MagmaTable::new(vec![]), Err(TableError::Shape(_))));
    }

    #[test]
    fn identity_is_renumbered_to_zero() {
        // Z3 written with identity at index 2: x*y = (x + y + 1) mod 3
        let m = MagmaTable::from_fn(3, |x, y| (x + y + 1) % 3).unwrap();
        let l = validate_loop(m, 2).unwrap();
        for x in 0..3 {
            assert_eq!(l.mul(0, x), x);
            assert_eq!(l.mul(x, 0), x);
        }
        assert!(l.is_associative());
    }

    #[test]
    fn missing_identity() {
        let m = MagmaTable::from_fn(3, |x, y| (x + y + 1) % 3).unwrap();
        assert_eq!(validate_loop(m, 0).unwrap_err(), TableError::NoIdentity(0));
    }

    #[test]
    fn divisions_are_total_and_unique() {
        let g = make_group(&GroupKind::Symmetric { n: 4 }).unwrap();
        let l = g.as_loop();
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(l.mul(a, l.left_div(a, b)), b);
                assert_eq!(l.mul(l.right_div(b, a), a), b);
            }
        }
    }

    #[test]
    fn element_orders_in_s4() {
        let g = make_group(&GroupKind::Symmetric { n: 4 }).unwrap();
        let perms = symmetric_permutations(4);
        let transposition = perms.iter().position(|p| p == &[1, 0, 2, 3]).unwrap();
        let four_cycle = perms.iter().position(|p| p == &[1, 2, 3, 0]).unwrap();
        assert_eq!(element_order(&g, 0), 1);
        assert_eq!(element_order(&g, transposition), 2);
        assert_eq!(element_order(&g, four_cycle), 4);
    }

    #[test]
    fn group_inverse_is_an_involution() {
        for kind in ["Z8", "S3", "S4", "Z4xZ2", "GF3^2:2"] {
            let g = make_group(&kind.parse().unwrap()).unwrap();
            for x in 0..g.order() {
                assert_eq!(g.inv(g.inv(x)), x);
                assert_eq!(g.mul(x, g.inv(x)), 0);
                assert_eq!(g.mul(g.inv(x), x), 0);
            }
        }
    }

    #[test]
    fn non_associative_loop_is_rejected_as_group() {
        // The smallest non-associative loop, order 5.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let l = validate_loop(MagmaTable::new(rows).unwrap(), 0).unwrap();
        assert!(matches!(GroupTable::from_loop(l), Err(TableError::NotAssociative(..))));
    }
}
