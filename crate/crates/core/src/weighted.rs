//! Weighted Steiner loops `(S, h)`, their factor systems, and the structure
//! of the weight group `D = ⟨h(x)⟩`.
//!
//! Throughout, `F(x) = f(x, x)` is the explicit diagonal and
//! `K = {h(x)h(y) : x ≠ y}`. The *core identity* is
//! `h(x) h(y) h(x) h(xy) = F(x)` for distinct non-identity `x, y`, and the
//! *square identity* (abelian `A` only) is
//! `h(x)² h(y)² = F(x) F(y) F(xy)⁻¹`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{ExtensionError, ExtensionSpec, FactorSystem, Variant};
use crate::fischer::is_restricted_fischer;
use crate::steiner::is_steiner_loop;
use crate::tables::{
    quotient_group, subgroup_generated, subloop_generated, subtable, GroupTable, LoopTable, SubsetLabel, SubsetReport,
    TableError,
};
use crate::Check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightedError {
    #[error("S is not a Steiner loop")]
    NotSteiner,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("A is not abelian")]
    NotAbelian,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("structure check failed: {0}")]
    Violation(String),
    #[error("factor system is not Steiner-like")]
    NotSteinerLike,
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// A Steiner loop `S`, a group `A`, a weight `h` and a diagonal `F`, both
/// defined on `S \ {e}`.
#[derive(Debug, Clone)]
pub struct WeightedSteinerLoop {
    s: Arc<LoopTable>,
    a: Arc<GroupTable>,
    // index 0 is a placeholder so that h[x] is h(x)
    h: Vec<usize>,
    diag: Vec<usize>,
}

impl WeightedSteinerLoop {
    /// `h` and `diag` list the values at `1, 2, …, |S| - 1`.
    pub fn new(s: Arc<LoopTable>, a: Arc<GroupTable>, h: &[usize], diag: &[usize]) -> Result<Self, WeightedError> {
        if !is_steiner_loop(&s) {
            return Err(WeightedError::NotSteiner);
        }
        Self::new_unchecked_loop(s, a, h, diag)
    }

    /// As [`WeightedSteinerLoop::new`] for an `S` already known to be a
    /// Steiner loop.
    pub fn new_unchecked_loop(
        s: Arc<LoopTable>,
        a: Arc<GroupTable>,
        h: &[usize],
        diag: &[usize],
    ) -> Result<Self, WeightedError> {
        let m = s.order() - 1;
        if h.len() != m || diag.len() != m {
            return Err(WeightedError::Shape(format!(
                "h and diag need {m} values, got {} and {}",
                h.len(),
                diag.len()
            )));
        }
        if let Some(&v) = h.iter().chain(diag).find(|&&v| v >= a.order()) {
            return Err(WeightedError::Shape(format!("{v} is not an element of A")));
        }
        let pad = |v: &[usize]| std::iter::once(0).chain(v.iter().copied()).collect();
        Ok(Self { h: pad(h), diag: pad(diag), s, a })
    }

    pub fn from_maps(
        s: Arc<LoopTable>,
        a: Arc<GroupTable>,
        h: &BTreeMap<usize, usize>,
        diag: &BTreeMap<usize, usize>,
    ) -> Result<Self, WeightedError> {
        let m = s.order() - 1;
        let dense = |map: &BTreeMap<usize, usize>, what: &str| -> Result<Vec<usize>, WeightedError> {
            if map.len() != m || map.keys().any(|&k| k == 0 || k > m) {
                return Err(WeightedError::Shape(format!("{what} must be defined exactly on 1..={m}")));
            }
            Ok(map.values().copied().collect())
        };
        Self::new(s, a, &dense(h, "h")?, &dense(diag, "diag")?)
    }

    pub fn s(&self) -> &Arc<LoopTable> {
        &self.s
    }

    pub fn a(&self) -> &Arc<GroupTable> {
        &self.a
    }

    #[inline]
    pub fn h(&self, x: usize) -> usize {
        self.h[x]
    }

    #[inline]
    pub fn diag(&self, x: usize) -> usize {
        self.diag[x]
    }

    /// Values of `h` at `1..|S|`.
    pub fn h_values(&self) -> &[usize] {
        &self.h[1..]
    }

    pub fn diag_values(&self) -> &[usize] {
        &self.diag[1..]
    }

    pub fn h_map(&self) -> BTreeMap<usize, usize> {
        (1..self.h.len()).map(|x| (x, self.h[x])).collect()
    }

    pub fn diag_map(&self) -> BTreeMap<usize, usize> {
        (1..self.diag.len()).map(|x| (x, self.diag[x])).collect()
    }

    /// The factor value `f(x, y)`.
    #[inline]
    pub fn f(&self, x: usize, y: usize) -> usize {
        if x == 0 || y == 0 {
            0
        } else if x == y {
            self.diag[x]
        } else {
            self.a.mul(self.h[x], self.h[y])
        }
    }

    pub fn spec(&self, variant: Variant) -> ExtensionSpec {
        ExtensionSpec::new(self.s.clone(), self.a.clone(), factor_table(self), variant)
            .expect("a weighted Steiner loop always gives a valid factor system")
    }

    /// Ordered pairs of distinct non-identity points, lexicographically.
    fn distinct_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.s.order();
        (1..n).flat_map(move |x| (1..n).filter(move |&y| y != x).map(move |y| (x, y)))
    }

    /// Every `f(x, y)` lies in `Z(A)`.
    pub fn f_central(&self) -> bool {
        let n = self.s.order();
        (1..n).all(|x| (1..n).all(|y| self.a.is_central(self.f(x, y))))
    }

    /// `F ⊆ Z(A)`.
    pub fn diag_central(&self) -> bool {
        self.diag_values().iter().all(|&v| self.a.is_central(v))
    }

    /// `K ⊆ Z(A)`.
    pub fn k_central(&self) -> bool {
        self.distinct_pairs().all(|(x, y)| self.a.is_central(self.a.mul(self.h[x], self.h[y])))
    }

    /// The values of `h` pairwise commute.
    pub fn h_range_commutative(&self) -> bool {
        let hv = self.h_values();
        hv.iter().all(|&p| hv.iter().all(|&q| self.a.commute(p, q)))
    }

    /// `Some(t)` when `h` is constant with value `t`.
    pub fn constant_h(&self) -> Option<usize> {
        let hv = self.h_values();
        let t = *hv.first()?;
        hv.iter().all(|&v| v == t).then_some(t)
    }
}

pub fn factor_table(w: &WeightedSteinerLoop) -> FactorSystem {
    FactorSystem::from_fn(w.s.order(), |x, y| w.f(x, y))
}

/// The diagonal `F(x) = h(x) h(y₀) h(x) h(x y₀)`, with `y₀` the least point
/// other than `x`, so that the core identity holds at `(x, y₀)`. `h` lists
/// the values on `1..|S|`; a loop of order 2 gets `F = 1`.
pub fn core_diagonal(s: &LoopTable, a: &GroupTable, h: &[usize]) -> Vec<usize> {
    let m = h.len();
    let hv = |x: usize| h[x - 1];
    (1..=m)
        .map(|x| match (1..=m).find(|&y| y != x) {
            Some(y) => a.product(&[hv(x), hv(y), hv(x), hv(s.mul(x, y))]),
            None => 0,
        })
        .collect()
}

/// `h(x) h(y) h(x) h(xy) = F(x)` for distinct non-identity `x, y`; the
/// witness is the least failing `[x, y]`.
pub fn check_core_identity(w: &WeightedSteinerLoop) -> Check {
    let a = &*w.a;
    let witness = w.distinct_pairs().find(|&(x, y)| {
        let xy = w.s.mul(x, y);
        a.product(&[w.h[x], w.h[y], w.h[x], w.h[xy]]) != w.diag[x]
    });
    Check::from_witness(witness.map(|(x, y)| vec![x, y]))
}

/// `h(x)² h(y)² = F(x) F(y) F(xy)⁻¹` for distinct non-identity `x, y`.
pub fn check_square_identity(w: &WeightedSteinerLoop) -> Result<Check, WeightedError> {
    let a = &*w.a;
    if !a.is_abelian() {
        return Err(WeightedError::NotAbelian);
    }
    let witness = w.distinct_pairs().find(|&(x, y)| {
        let xy = w.s.mul(x, y);
        let lhs = a.product(&[w.h[x], w.h[x], w.h[y], w.h[y]]);
        let rhs = a.product(&[w.diag[x], w.diag[y], a.inv(w.diag[xy])]);
        lhs != rhs
    });
    Ok(Check::from_witness(witness.map(|(x, y)| vec![x, y])))
}

/// Recovers a weight from a raw factor system: the least `h(1)` for which
/// `f(x, y) = h(x) h(y)` holds on all distinct non-identity pairs.
pub fn recover_weight(spec: &ExtensionSpec) -> Result<WeightedSteinerLoop, WeightedError> {
    if !is_steiner_loop(&spec.s) {
        return Err(WeightedError::NotSteiner);
    }
    let n = spec.s.order();
    let a = &*spec.a;
    let diag: Vec<usize> = (1..n).map(|x| spec.f.get(x, x)).collect();
    if n <= 2 {
        let h = vec![0; n - 1];
        return WeightedSteinerLoop::new_unchecked_loop(spec.s.clone(), spec.a.clone(), &h, &diag);
    }
    for h1 in 0..a.order() {
        let inv = a.inv(h1);
        let h: Vec<usize> = (1..n).map(|y| if y == 1 { h1 } else { a.mul(inv, spec.f.get(1, y)) }).collect();
        let ok = (1..n).all(|x| (1..n).all(|y| x == y || a.mul(h[x - 1], h[y - 1]) == spec.f.get(x, y)));
        if ok {
            return WeightedSteinerLoop::new_unchecked_loop(spec.s.clone(), spec.a.clone(), &h, &diag);
        }
    }
    Err(WeightedError::NotSteinerLike)
}

/// The outcome of the weight-group structure theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// `h ≡ t`, `F ≡ t⁴`, `D = ⟨t⟩`.
    ConstantT { t: usize, t4: usize },
    /// `h = t` on `U \ {e}`, `h = tω` off `U`, `F = t⁴` on `U`, `t⁴ω`
    /// off `U`. `direct` records whether `⟨t⟩ ∩ ⟨ω⟩ = 1`.
    DirectWithZ2 { t: usize, omega: usize, subloop_u: Vec<usize>, direct: bool },
    /// `h(x) = u ω_x` with `u` centralising `D`, `o(ω_x) ≤ 2`, `F ≡ u⁴`,
    /// and `D⟨u⟩/⟨u⟩` a restricted Fischer group on the images of the
    /// non-trivial `ω_x`.
    NonabelianFischer {
        u: usize,
        u_in_d: bool,
        omegas: Vec<usize>,
        quotient_order: usize,
        gamma: Vec<usize>,
        restricted_fischer: bool,
    },
    /// `|S| = 4`, `D` abelian: `F(x) = a l`, `F(y) = b l`, `F(xy) = c l`
    /// with `l = abc`.
    SmallAbelian { a: usize, b: usize, c: usize, l: usize },
    /// `|S| = 4`, `D` non-abelian: `D = K⟨a⟩`, `K = ⟨s⟩ × Z(D)`,
    /// `⟨s⟩ = D′` of order 3, `a` inverting `s`, `Z(D) = ⟨a², t³⟩`.
    SmallNonabelian { a: usize, t: usize, s: usize, k: Vec<usize>, centre: Vec<usize> },
    /// `D` abelian with `h = t λ` for a homomorphism `λ: S → A` onto an
    /// elementary abelian 2-group of rank `image_rank ≥ 2`, and
    /// `F = t⁴ λ`. The rank-one case is [`Classification::DirectWithZ2`].
    HomomorphicWeight { t: usize, lambda: Vec<usize>, image_rank: usize },
    /// The core identity fails, or `|S| < 4`.
    Unstructured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightAnalysis {
    pub s_order: usize,
    pub d_group: SubsetReport,
    pub d_abelian: bool,
    pub k_central: bool,
    pub f_central: bool,
    pub core_identity: Check,
    pub classification: Classification,
}

fn violation(what: impl Into<String>) -> WeightedError {
    WeightedError::Violation(what.into())
}

fn ensure(cond: bool, what: &str) -> Result<(), WeightedError> {
    if cond {
        Ok(())
    } else {
        Err(violation(what))
    }
}

pub fn analyze_weight_group(w: &WeightedSteinerLoop) -> Result<WeightAnalysis, WeightedError> {
    let a = &*w.a;
    let d_group = subgroup_generated(a, w.h_values());
    let d_abelian = d_group.members.iter().all(|&p| d_group.members.iter().all(|&q| a.commute(p, q)));
    let core_identity = check_core_identity(w);
    let f_central = w.diag_central();
    let s_order = w.s.order();
    let mut report = WeightAnalysis {
        s_order,
        d_group,
        d_abelian,
        k_central: w.k_central(),
        f_central,
        core_identity: core_identity.clone(),
        classification: Classification::Unstructured,
    };
    if !core_identity.holds || s_order < 4 {
        return Ok(report);
    }
    if !f_central {
        return Err(WeightedError::HypothesisFailed("the diagonal values must lie in the centre of A".into()));
    }
    report.classification = match (s_order == 4, d_abelian) {
        (true, true) => classify_small_abelian(w)?,
        (true, false) => classify_small_nonabelian(w, &report.d_group)?,
        (false, true) => classify_abelian(w)?,
        (false, false) => classify_nonabelian(w, &report.d_group)?,
    };
    Ok(report)
}

fn classify_small_abelian(w: &WeightedSteinerLoop) -> Result<Classification, WeightedError> {
    let g = &*w.a;
    let (x, y) = (1, 2);
    let xy = w.s.mul(x, y);
    let (a, b, c) = (w.h(x), w.h(y), w.h(xy));
    let l = g.product(&[a, b, c]);
    ensure(
        w.diag(x) == g.mul(a, l) && w.diag(y) == g.mul(b, l) && w.diag(xy) == g.mul(c, l),
        "F(x) = a l, F(y) = b l, F(xy) = c l",
    )?;
    Ok(Classification::SmallAbelian { a, b, c, l })
}

fn classify_small_nonabelian(w: &WeightedSteinerLoop, d: &SubsetReport) -> Result<Classification, WeightedError> {
    let g = &*w.a;
    let a = w.h(1);
    let t = g.mul(w.h(1), w.h(2));
    let commutators: Vec<usize> =
        d.members.iter().flat_map(|&p| d.members.iter().map(move |&q| g.commutator(p, q))).collect();
    let derived = subgroup_generated(g, &commutators);
    let centre: Vec<usize> =
        d.members.iter().copied().filter(|&z| d.members.iter().all(|&q| g.commute(z, q))).collect();
    ensure(derived.len() == 3, "D′ has order 3")?;
    let s = derived.members[1];
    ensure(centre.iter().all(|&z| z == 0 || !derived.contains(z)), "D′ ∩ Z(D) = 1")?;
    let mut k: Vec<usize> = derived.members.iter().flat_map(|&p| centre.iter().map(move |&z| g.mul(p, z))).collect();
    k.sort_unstable();
    k.dedup();
    ensure(k.len() == 3 * centre.len(), "K = D′ × Z(D)")?;
    ensure(2 * k.len() == d.len(), "K has index 2 in D")?;
    ensure(k.binary_search(&a).is_err(), "a lies outside K")?;
    ensure(g.conjugate(s, a) == g.inv(s), "a inverts s")?;
    let generated = subgroup_generated(g, &[g.mul(a, a), g.pow(t, 3)]);
    ensure(generated.members == centre, "Z(D) = ⟨a², t³⟩")?;
    Ok(Classification::SmallNonabelian { a, t, s, k, centre })
}

fn classify_abelian(w: &WeightedSteinerLoop) -> Result<Classification, WeightedError> {
    let g = &*w.a;
    let n = w.s.order();
    if let Some(t) = w.constant_h() {
        let t4 = g.pow(t, 4);
        ensure(w.diag_values().iter().all(|&v| v == t4), "F ≡ t⁴")?;
        return Ok(Classification::ConstantT { t, t4 });
    }
    let mut values: Vec<usize> = w.h_values().to_vec();
    values.sort_unstable();
    values.dedup();
    if values.len() != 2 {
        return classify_homomorphic(w);
    }
    // U is the preimage of the value whose points, with e, form a subloop of
    // index 2; at most one value qualifies since the preimages have sizes
    // |U| - 1 and |U|.
    let found = values.iter().find_map(|&v| {
        let mut u: Vec<usize> = std::iter::once(0).chain((1..n).filter(|&x| w.h(x) == v)).collect();
        u.sort_unstable();
        (2 * u.len() == n && subloop_generated(&w.s, &u) == u).then_some((v, u))
    });
    let Some((t, subloop_u)) = found else {
        return classify_homomorphic(w);
    };
    let other = *values.iter().find(|&&v| v != t).unwrap();
    let omega = g.mul(g.inv(t), other);
    ensure(g.mul(omega, omega) == 0 && omega != 0, "ω is an involution")?;
    let in_u = |x: usize| subloop_u.binary_search(&x).is_ok();
    let t4 = g.pow(t, 4);
    ensure((1..n).all(|x| w.diag(x) == if in_u(x) { t4 } else { g.mul(t4, omega) }), "F = t⁴ on U and t⁴ω off U")?;
    // S ≅ U × Z2 via (u, 0) ↦ u, (u, 1) ↦ u z for a fixed z ∉ U
    let z = (1..n).find(|&x| !in_u(x)).unwrap();
    let image = |u: usize, bit: bool| if bit { w.s.mul(u, z) } else { u };
    let ok = subloop_u.iter().all(|&u1| {
        [false, true].iter().all(|&b1| {
            subloop_u.iter().all(|&u2| {
                [false, true].iter().all(|&b2| {
                    let lhs = w.s.mul(image(u1, b1), image(u2, b2));
                    lhs == image(w.s.mul(u1, u2), b1 ^ b2)
                })
            })
        })
    });
    ensure(ok, "S ≅ U × Z2")?;
    let t_group = subgroup_generated(g, &[t]);
    let direct = !t_group.contains(omega);
    Ok(Classification::DirectWithZ2 { t, omega, subloop_u, direct })
}

/// `h = t λ` with `t = h(x) h(y) h(xy)⁻¹` on any block.
fn classify_homomorphic(w: &WeightedSteinerLoop) -> Result<Classification, WeightedError> {
    let g = &*w.a;
    let n = w.s.order();
    let (x, y) = (1, 2);
    let t = g.mul3(w.h(x), w.h(y), g.inv(w.h(w.s.mul(x, y))));
    let lambda: Vec<usize> = (1..n).map(|z| g.mul(g.inv(t), w.h(z))).collect();
    let lam = |z: usize| if z == 0 { 0 } else { lambda[z - 1] };
    ensure(lambda.iter().all(|&l| g.mul(l, l) == 0), "h(x) = t λ(x) with λ(x)² = 1")?;
    ensure((1..n).all(|p| (1..n).all(|q| g.mul(lam(p), lam(q)) == lam(w.s.mul(p, q)))), "λ is a homomorphism")?;
    let t4 = g.pow(t, 4);
    ensure((1..n).all(|z| w.diag(z) == g.mul(t4, lam(z))), "F = t⁴ λ")?;
    let image = subgroup_generated(g, &lambda);
    let image_rank = image.len().trailing_zeros() as usize;
    ensure(image_rank >= 2, "λ has rank at least 2")?;
    Ok(Classification::HomomorphicWeight { t, lambda, image_rank })
}

fn classify_nonabelian(w: &WeightedSteinerLoop, d: &SubsetReport) -> Result<Classification, WeightedError> {
    let g = &*w.a;
    let u = (0..g.order())
        .find(|&u| {
            d.members.iter().all(|&q| g.commute(u, q))
                && w.h_values().iter().all(|&hx| {
                    let om = g.mul(hx, g.inv(u));
                    g.mul(om, om) == 0
                })
        })
        .ok_or_else(|| violation("some u centralising D has h(x)u⁻¹ of order ≤ 2"))?;
    let u4 = g.pow(u, 4);
    ensure(w.diag_values().iter().all(|&v| v == u4), "F ≡ u⁴")?;
    let omegas: Vec<usize> = w.h_values().iter().map(|&hx| g.mul(g.inv(u), hx)).collect();
    let mut gens: Vec<usize> = w.h_values().to_vec();
    gens.push(u);
    let m = subgroup_generated(g, &gens);
    let (m_table, embed) = subtable(g.as_loop(), &m.members)?;
    let m_group = GroupTable::from_loop(m_table)?;
    let local = |x: usize| embed.binary_search(&x).unwrap();
    let u_sub = subgroup_generated(&m_group, &[local(u)]);
    let q = quotient_group(&m_group, &SubsetReport::new(u_sub.members, SubsetLabel::Generated))?;
    let mut gamma: Vec<usize> = omegas.iter().map(|&om| q.projection[local(om)]).filter(|&c| c != 0).collect();
    gamma.sort_unstable();
    gamma.dedup();
    let restricted_fischer = is_restricted_fischer(&q.table, &gamma).holds;
    ensure(restricted_fischer, "D⟨u⟩/⟨u⟩ is a restricted Fischer group on Γ")?;
    Ok(Classification::NonabelianFischer {
        u,
        u_in_d: d.contains(u),
        omegas,
        quotient_order: q.table.order(),
        gamma,
        restricted_fischer,
    })
}
