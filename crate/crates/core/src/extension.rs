//! Extensions of a group `A` by a loop `S` on the set `S × A`.
//!
//! The element `(x, ξ)` has index `x·|A| + ξ`. With a factor system `f`
//! (`f(x, e) = f(e, y) = 1`) the three multiplications are
//!
//! * `Standard`: `(x, ξ)(y, η) = (xy, f(x, y) ξ η)`
//! * `Star`:     `(x, ξ)(y, η) = (xy, ξ f(x, y) η)`
//! * `StarStar`: `(x, ξ)(y, η) = (xy, ξ η f(x, y))`

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tables::{validate_loop, GroupTable, LoopTable, MagmaTable, TableError, ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("factor system must be trivial on the border: f({0}, {1}) != 1")]
    Border(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("extension of order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("the amalgamated subgroup must be abelian")]
    DeltaNotAbelian,
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Star,
    StarStar,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Standard, Variant::Star, Variant::StarStar];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::Star => "star",
            Variant::StarStar => "starstar",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = ExtensionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| ExtensionError::Shape(format!("unknown variant {s:?}")))
    }
}

/// An `|S| × |S|` array of `A`-indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorSystem {
    s_order: usize,
    cells: Vec<u16>,
}

impl FactorSystem {
    pub fn from_fn(s_order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(s_order * s_order);
        for x in 0..s_order {
            for y in 0..s_order {
                cells.push(f(x, y) as u16);
            }
        }
        Self { s_order, cells }
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, ExtensionError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(ExtensionError::Shape("factor system must be square".into()));
        }
        Ok(Self::from_fn(n, |x, y| rows[x][y]))
    }

    pub fn trivial(s_order: usize) -> Self {
        Self::from_fn(s_order, |_, _| 0)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.s_order + y] as usize
    }

    pub fn s_order(&self) -> usize {
        self.s_order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.s_order).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().map(|&v| v as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.cells.iter().all(|&v| v == 0)
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionSpec {
    pub s: Arc<LoopTable>,
    pub a: Arc<GroupTable>,
    pub f: FactorSystem,
    pub variant: Variant,
}

impl ExtensionSpec {
    pub fn new(
        s: Arc<LoopTable>,
        a: Arc<GroupTable>,
        f: FactorSystem,
        variant: Variant,
    ) -> Result<Self, ExtensionError> {
        if f.s_order() != s.order() {
            return Err(ExtensionError::Shape(format!(
                "factor system has {} rows but S has order {}",
                f.s_order(),
                s.order()
            )));
        }
        if let Some(v) = f.values().find(|&v| v >= a.order()) {
            return Err(ExtensionError::Shape(format!("factor value {v} is not an element of A")));
        }
        for x in 0..s.order() {
            if f.get(x, 0) != 0 {
                return Err(ExtensionError::Border(x, 0));
            }
            if f.get(0, x) != 0 {
                return Err(ExtensionError::Border(0, x));
            }
        }
        Ok(Self { s, a, f, variant })
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        Self { variant, ..self.clone() }
    }

    pub fn order(&self) -> usize {
        self.s.order() * self.a.order()
    }

    #[inline]
    pub fn encode(&self, x: usize, xi: usize) -> usize {
        x * self.a.order() + xi
    }

    #[inline]
    pub fn decode(&self, p: usize) -> (usize, usize) {
        (p / self.a.order(), p % self.a.order())
    }

    /// The product of two encoded elements, computed from the formula.
    #[inline]
    pub fn product(&self, p: usize, q: usize) -> usize {
        let ((x, xi), (y, eta)) = (self.decode(p), self.decode(q));
        let a = &*self.a;
        let f = self.f.get(x, y);
        let c = match self.variant {
            Variant::Standard => a.mul3(f, xi, eta),
            Variant::Star => a.mul3(xi, f, eta),
            Variant::StarStar => a.mul3(xi, eta, f),
        };
        self.encode(self.s.mul(x, y), c)
    }

    /// True when every value of `f` lies in `Z(A)`.
    pub fn f_central(&self) -> bool {
        self.f.values().all(|v| self.a.is_central(v))
    }
}

/// Builds and validates the extension table.
pub fn build_extension(spec: &ExtensionSpec) -> Result<LoopTable, ExtensionError> {
    let order = spec.order();
    if order > ORDER_CAP {
        return Err(ExtensionError::OrderCap { order, cap: ORDER_CAP });
    }
    let (n, m) = (spec.s.order(), spec.a.order());
    let a = &*spec.a;
    let mut cells = vec![0u16; order * order];
    for x in 0..n {
        for y in 0..n {
            let (f, base) = (spec.f.get(x, y), spec.s.mul(x, y) * m);
            for xi in 0..m {
                let row = &mut cells[(x * m + xi) * order..][..order];
                for eta in 0..m {
                    let c = match spec.variant {
                        Variant::Standard => a.mul3(f, xi, eta),
                        Variant::Star => a.mul3(xi, f, eta),
                        Variant::StarStar => a.mul3(xi, eta, f),
                    };
                    row[y * m + eta] = (base + c) as u16;
                }
            }
        }
    }
    Ok(validate_loop(MagmaTable::from_cells(order, cells)?, 0)?)
}

/// `f ≡ 1`, i.e. the extension is the direct product `S × A`.
pub fn is_direct_product(spec: &ExtensionSpec) -> bool {
    spec.f.is_trivial()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseMaps {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub coincide: bool,
    /// Least element whose left and right inverses differ.
    pub mismatch: Option<usize>,
}

/// Left and right inverses from the closed formulas, each checked against
/// the multiplication.
pub fn inverse_maps(spec: &ExtensionSpec) -> InverseMaps {
    let a = &*spec.a;
    let s = &*spec.s;
    let n = spec.order();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for p in 0..n {
        let (x, xi) = spec.decode(p);
        let xl = s.left_inverse(x);
        let xr = s.right_inverse(x);
        let fl = a.inv(spec.f.get(xl, x));
        let fr = a.inv(spec.f.get(x, xr));
        let xi_inv = a.inv(xi);
        let (eta_l, eta_r) = match spec.variant {
            Variant::Standard => (a.mul(fl, xi_inv), a.mul(xi_inv, fr)),
            Variant::Star => (a.mul(xi_inv, fl), a.mul(fr, xi_inv)),
            Variant::StarStar => (a.mul(fl, xi_inv), a.mul(xi_inv, fr)),
        };
        let l = spec.encode(xl, eta_l);
        let r = spec.encode(xr, eta_r);
        assert_eq!(spec.product(l, p), 0, "left inverse formula");
        assert_eq!(spec.product(p, r), 0, "right inverse formula");
        left.push(l);
        right.push(r);
    }
    let mismatch = (0..n).find(|&p| left[p] != right[p]);
    InverseMaps { left, right, coincide: mismatch.is_none(), mismatch }
}

/// Data for the construction on `S × B × Δ` with `Δ` central:
/// `(a₁,ρ₁,σ₁)(a₂,ρ₂,σ₂) = (a₁a₂, ρ₁ρ₂, σ₁σ₂ f(a₁,a₂) k(ρ₁,ρ₂))`.
#[derive(Debug, Clone)]
pub struct AmalgamatedSpec {
    pub s: Arc<LoopTable>,
    pub b: Arc<GroupTable>,
    pub delta: Arc<GroupTable>,
    /// `|B| × |B|` array of `Δ`-indices.
    pub k: FactorSystem,
    /// `|S| × |S|` array of `Δ`-indices.
    pub f_values: FactorSystem,
}

impl AmalgamatedSpec {
    pub fn new(
        s: Arc<LoopTable>,
        b: Arc<GroupTable>,
        delta: Arc<GroupTable>,
        k: FactorSystem,
        f_values: FactorSystem,
    ) -> Result<Self, ExtensionError> {
        if !delta.is_abelian() {
            return Err(ExtensionError::DeltaNotAbelian);
        }
        if k.s_order() != b.order() || f_values.s_order() != s.order() {
            return Err(ExtensionError::Shape("k must be |B|×|B| and f must be |S|×|S|".into()));
        }
        if k.values().chain(f_values.values()).any(|v| v >= delta.order()) {
            return Err(ExtensionError::Shape("k and f take values in Δ".into()));
        }
        for r in 0..b.order() {
            if k.get(r, 0) != 0 {
                return Err(ExtensionError::Border(r, 0));
            }
            if k.get(0, r) != 0 {
                return Err(ExtensionError::Border(0, r));
            }
        }
        for x in 0..s.order() {
            if f_values.get(x, 0) != 0 {
                return Err(ExtensionError::Border(x, 0));
            }
            if f_values.get(0, x) != 0 {
                return Err(ExtensionError::Border(0, x));
            }
        }
        Ok(Self { s, b, delta, k, f_values })
    }

    pub fn order(&self) -> usize {
        self.s.order() * self.b.order() * self.delta.order()
    }

    pub fn encode(&self, a: usize, rho: usize, sigma: usize) -> usize {
        (a * self.b.order() + rho) * self.delta.order() + sigma
    }

    pub fn decode(&self, p: usize) -> (usize, usize, usize) {
        let d = self.delta.order();
        let b = self.b.order();
        (p / (b * d), (p / d) % b, p % d)
    }

    /// Sufficient and necessary for associativity: `S` a group and both
    /// `k` and `f` satisfying the cocycle identity.
    pub fn associativity_criterion(&self) -> bool {
        self.s.is_associative()
            && is_cocycle(self.b.as_loop(), &self.delta, &self.k)
            && is_cocycle(&self.s, &self.delta, &self.f_values)
    }
}

/// `c(x,y) c(xy,z) = c(y,z) c(x,yz)` for all triples, with values in an
/// abelian group.
pub fn is_cocycle(g: &LoopTable, values: &GroupTable, c: &FactorSystem) -> bool {
    let n = g.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                values.mul(c.get(x, y), c.get(g.mul(x, y), z)) == values.mul(c.get(y, z), c.get(x, g.mul(y, z)))
            })
        })
    })
}

pub fn build_amalgamated(am: &AmalgamatedSpec) -> Result<LoopTable, ExtensionError> {
    let order = am.order();
    if order > ORDER_CAP {
        return Err(ExtensionError::OrderCap { order, cap: ORDER_CAP });
    }
    let d = &*am.delta;
    Ok(LoopTable::from_fn(order, |p, q| {
        let ((a1, r1, s1), (a2, r2, s2)) = (am.decode(p), am.decode(q));
        let sigma = d.mul(d.mul3(s1, s2, am.f_values.get(a1, a2)), am.k.get(r1, r2));
        am.encode(am.s.mul(a1, a2), am.b.mul(r1, r2), sigma)
    })?)
}
