//! Isomorphisms between extensions that map the `A`-slice onto itself, and
//! the automorphism group of one extension.
//!
//! A witness `(α′, α″, ρ)` stands for `β: (x, ξ) ↦ (x^α′, ρ(x^α′)·ξ^α″)`,
//! so `ρ` is indexed by image points. With `ρ` central the defining equation
//! `f₁(x,y)^α″ = ρ((xy)^α′)⁻¹ ρ(x^α′) ρ(y^α′) f₂(x^α′, y^α′)` is the same
//! for all three product variants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{build_extension, ExtensionError, ExtensionSpec};
use crate::tables::{derived_subloop, isomorphisms, GroupTable, LoopTable};
use crate::weighted::{recover_weight, WeightedSteinerLoop};

/// Largest loop order for exhaustive automorphism enumeration of `S`.
pub const LOOP_AUT_CAP: usize = 16;
/// Largest group order for exhaustive automorphism enumeration of `A`.
pub const GROUP_AUT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("order {order} exceeds the enumeration cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("witness failed table verification: {0}")]
    Violation(String),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

fn automorphisms_capped(l: &LoopTable, cap: usize) -> Result<Vec<Vec<usize>>, MorphismError> {
    if l.order() > cap {
        return Err(MorphismError::OrderCap { order: l.order(), cap });
    }
    Ok(isomorphisms(l, l, usize::MAX))
}

/// Every automorphism of `l`, as image arrays fixing 0.
pub fn loop_automorphisms(l: &LoopTable) -> Result<Vec<Vec<usize>>, MorphismError> {
    automorphisms_capped(l, LOOP_AUT_CAP)
}

pub fn group_automorphisms(g: &GroupTable) -> Result<Vec<Vec<usize>>, MorphismError> {
    automorphisms_capped(g.as_loop(), GROUP_AUT_CAP)
}

mod rho_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rho: &[usize], s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(rho.iter().enumerate().map(|(i, v)| (i.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        let map = BTreeMap::<String, usize>::deserialize(d)?;
        let mut pairs = Vec::with_capacity(map.len());
        for (k, v) in map {
            let k: usize = k.parse().map_err(serde::de::Error::custom)?;
            pairs.push((k, v));
        }
        pairs.sort_unstable();
        if pairs.iter().enumerate().any(|(i, &(k, _))| i != k) {
            return Err(serde::de::Error::custom("rho must be defined on 0..n"));
        }
        Ok(pairs.into_iter().map(|(_, v)| v).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorphismWitness {
    pub alpha_s: Vec<usize>,
    pub alpha_a: Vec<usize>,
    #[serde(with = "rho_map")]
    pub rho: Vec<usize>,
}

impl MorphismWitness {
    pub fn identity(s_order: usize, a_order: usize) -> Self {
        Self { alpha_s: (0..s_order).collect(), alpha_a: (0..a_order).collect(), rho: vec![0; s_order] }
    }

    pub fn is_identity(&self) -> bool {
        self.induces_identity() && self.rho.iter().all(|&r| r == 0)
    }

    /// `α′` and `α″` are both identity maps.
    pub fn induces_identity(&self) -> bool {
        let id = |v: &[usize]| v.iter().enumerate().all(|(i, &x)| i == x);
        id(&self.alpha_s) && id(&self.alpha_a)
    }

    /// The point map on `S × A`, in the index encoding of `spec`.
    pub fn expand(&self, spec: &ExtensionSpec) -> Vec<usize> {
        let a = &*spec.a;
        (0..spec.order())
            .map(|p| {
                let (x, xi) = spec.decode(p);
                let u = self.alpha_s[x];
                spec.encode(u, a.mul(self.rho[u], self.alpha_a[xi]))
            })
            .collect()
    }

    /// `self` followed by `other`, as witnesses on one extension.
    pub fn then(&self, other: &MorphismWitness, a: &GroupTable) -> MorphismWitness {
        // (x, ξ) ↦ (u, ρ₁(u) ξ^α₁″) ↦ (u^α₂′, ρ₂(u^α₂′) ρ₁(u)^α₂″ ξ^(α₁″α₂″))
        let alpha_s: Vec<usize> = self.alpha_s.iter().map(|&u| other.alpha_s[u]).collect();
        let alpha_a: Vec<usize> = self.alpha_a.iter().map(|&v| other.alpha_a[v]).collect();
        let mut rho = vec![0; self.rho.len()];
        for (u, &r) in self.rho.iter().enumerate() {
            let w = other.alpha_s[u];
            rho[w] = a.mul(other.rho[w], other.alpha_a[r]);
        }
        MorphismWitness { alpha_s, alpha_a, rho }
    }
}

fn preserves(l: &LoopTable, m: &LoopTable, map: &[usize]) -> bool {
    let n = l.order();
    map.len() == n && m.order() == n && (0..n).all(|x| (0..n).all(|y| map[l.mul(x, y)] == m.mul(map[x], map[y])))
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Outcome of [`check_iso_equation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoEquationCheck {
    pub holds: bool,
    /// Which requirement failed first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    /// Failing `[x, y]` for the equation or `[x]` for a pointwise condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    /// For two Steiner-like specs: `ρ(x^α′)² = f₁(x,x)^α″ f₂(x^α′,x^α′)⁻¹`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal_form: Option<bool>,
    /// For two Steiner-like specs, `x ≠ y`:
    /// `h₁(x)^α″ h₁(y)^α″ = ρ((xy)^α′)⁻¹ ρ(x^α′) ρ(y^α′) h₂(x^α′) h₂(y^α′)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub off_diagonal_form: Option<bool>,
}

impl IsoEquationCheck {
    fn fail(failure: &str, witness: Option<Vec<usize>>) -> Self {
        Self { holds: false, failure: Some(failure.into()), witness, diagonal_form: None, off_diagonal_form: None }
    }
}

fn steiner_weights(spec: &ExtensionSpec) -> Option<WeightedSteinerLoop> {
    recover_weight(spec).ok()
}

/// Verifies the invariants of `w` and the isomorphism equation for every
/// pair; for Steiner-like specs also the diagonal and off-diagonal forms.
pub fn check_iso_equation(w: &MorphismWitness, spec1: &ExtensionSpec, spec2: &ExtensionSpec) -> IsoEquationCheck {
    let (s1, s2, a) = (&*spec1.s, &*spec2.s, &*spec2.a);
    let (n, m) = (s1.order(), a.order());
    if !is_bijection(&w.alpha_s, n) || !preserves(s1, s2, &w.alpha_s) {
        return IsoEquationCheck::fail("alpha_s is not an isomorphism of S", None);
    }
    if !is_bijection(&w.alpha_a, m) || !preserves(spec1.a.as_loop(), a.as_loop(), &w.alpha_a) {
        return IsoEquationCheck::fail("alpha_a is not an isomorphism of A", None);
    }
    if w.rho.len() != n || w.rho.iter().any(|&r| r >= m) || w.rho[0] != 0 {
        return IsoEquationCheck::fail("rho must map S into A with rho(e) = 1", None);
    }
    if let Some(u) = (0..n).find(|&u| !a.is_central(w.rho[u])) {
        return IsoEquationCheck::fail("rho takes a noncentral value", Some(vec![u]));
    }
    let (al, aa, rho) = (&w.alpha_s, &w.alpha_a, &w.rho);
    let rhs = |x: usize, y: usize| {
        let r = a.mul3(a.inv(rho[al[s1.mul(x, y)]]), rho[al[x]], rho[al[y]]);
        a.mul(r, spec2.f.get(al[x], al[y]))
    };
    let bad = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| aa[spec1.f.get(x, y)] != rhs(x, y));
    let mut out = match bad {
        Some((x, y)) => IsoEquationCheck::fail("isomorphism equation", Some(vec![x, y])),
        None => {
            IsoEquationCheck { holds: true, failure: None, witness: None, diagonal_form: None, off_diagonal_form: None }
        }
    };
    if let (Some(w1), Some(w2)) = (steiner_weights(spec1), steiner_weights(spec2)) {
        let diag = (1..n).all(|x| {
            let u = al[x];
            a.mul(rho[u], rho[u]) == a.mul(aa[w1.diag(x)], a.inv(w2.diag(u)))
        });
        let off = (1..n).all(|x| {
            (1..n).filter(|&y| y != x).all(|y| {
                let lhs = a.mul(aa[w1.h(x)], aa[w1.h(y)]);
                let r = a.mul3(a.inv(rho[al[s1.mul(x, y)]]), rho[al[x]], rho[al[y]]);
                lhs == a.mul3(r, w2.h(al[x]), w2.h(al[y]))
            })
        });
        out.diagonal_form = Some(diag);
        out.off_diagonal_form = Some(off);
    }
    out
}

/// `[h₁(y), h₁(x)]^α″ = [h₂(y^α′), h₂(x^α′)]` for all `x ≠ y` off `e`.
fn commutators_match(w1: &WeightedSteinerLoop, w2: &WeightedSteinerLoop, al: &[usize], aa: &[usize]) -> bool {
    let a = w2.a();
    let n = al.len();
    (1..n).all(|x| {
        (1..n).filter(|&y| y != x).all(|y| aa[a.commutator(w1.h(y), w1.h(x))] == a.commutator(w2.h(al[y]), w2.h(al[x])))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Skip `(α′, α″)` pairs failing the commutator condition. Only used
    /// when both specs are Steiner-like.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { prune: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoSearch {
    /// Sorted lexicographically.
    pub witnesses: Vec<MorphismWitness>,
    pub pairs_considered: usize,
    pub pairs_pruned: usize,
}

struct RhoSolver<'a> {
    spec1: &'a ExtensionSpec,
    spec2: &'a ExtensionSpec,
    al: &'a [usize],
    aa: &'a [usize],
    // preimage of each image point
    inv_al: Vec<usize>,
    roots: Vec<Vec<usize>>,
    found: Vec<Vec<usize>>,
}

impl RhoSolver<'_> {
    /// The equation at `(x, y)` once all three image points carry a value.
    fn pair_ok(&self, rho: &[Option<usize>], x: usize, y: usize) -> bool {
        let (s1, a) = (&*self.spec1.s, &*self.spec2.a);
        let (u, v, uv) = (self.al[x], self.al[y], self.al[s1.mul(x, y)]);
        match (rho[u], rho[v], rho[uv]) {
            (Some(ru), Some(rv), Some(ruv)) => {
                let rhs = a.mul(a.mul3(a.inv(ruv), ru, rv), self.spec2.f.get(u, v));
                self.aa[self.spec1.f.get(x, y)] == rhs
            }
            _ => true,
        }
    }

    fn dfs(&mut self, u: usize, rho: &mut Vec<Option<usize>>) {
        let n = rho.len();
        if u == n {
            self.found.push(rho.iter().map(|r| r.unwrap()).collect());
            return;
        }
        let x = self.inv_al[u];
        for i in 0..self.roots[u].len() {
            rho[u] = Some(self.roots[u][i]);
            // every pair whose three image points are now assigned, one being u
            let s1 = &*self.spec1.s;
            let ok = (0..n).all(|y| self.pair_ok(rho, x, y) && self.pair_ok(rho, y, x))
                && (0..n).all(|p| self.pair_ok(rho, p, s1.left_div(p, x)));
            if ok {
                self.dfs(u + 1, rho);
            }
        }
        rho[u] = None;
    }
}

/// All witnesses `(α′, α″, ρ)` for isomorphisms `spec1 → spec2` mapping the
/// `A`-slice onto itself. Each is verified on the built tables.
pub fn find_isomorphisms(
    spec1: &ExtensionSpec,
    spec2: &ExtensionSpec,
    options: SearchOptions,
) -> Result<IsoSearch, MorphismError> {
    let (n, m) = (spec1.s.order(), spec1.a.order());
    if spec2.s.order() != n || spec2.a.order() != m {
        return Err(MorphismError::Precondition("S and A orders must match".into()));
    }
    if spec1.variant != spec2.variant {
        return Err(MorphismError::Precondition("both specs must use the same product variant".into()));
    }
    for (l, cap) in [(&*spec1.s, LOOP_AUT_CAP), (spec1.a.as_loop(), GROUP_AUT_CAP)] {
        if l.order() > cap {
            return Err(MorphismError::OrderCap { order: l.order(), cap });
        }
    }
    let s_isos = isomorphisms(&spec1.s, &spec2.s, usize::MAX);
    let a_isos = isomorphisms(spec1.a.as_loop(), spec2.a.as_loop(), usize::MAX);
    let weights = match (steiner_weights(spec1), steiner_weights(spec2)) {
        (Some(w1), Some(w2)) if options.prune => Some((w1, w2)),
        _ => None,
    };
    let a = &*spec2.a;
    let centre: Vec<usize> = (0..m).filter(|&c| a.is_central(c)).collect();
    let t1 = build_extension(spec1)?;
    let t2 = build_extension(spec2)?;

    let mut witnesses = Vec::new();
    let (mut considered, mut pruned) = (0, 0);
    for al in &s_isos {
        for aa in &a_isos {
            considered += 1;
            if let Some((w1, w2)) = &weights {
                if !commutators_match(w1, w2, al, aa) {
                    pruned += 1;
                    continue;
                }
            }
            let mut inv_al = vec![0; n];
            for (x, &u) in al.iter().enumerate() {
                inv_al[u] = x;
            }
            // ρ(u)² = f₁(x,x)^α″ f₂(u,u)⁻¹ with u = x^α′; roots are enumerated
            let roots: Vec<Vec<usize>> = (0..n)
                .map(|u| {
                    if u == 0 {
                        return vec![0];
                    }
                    let x = inv_al[u];
                    let target = a.mul(aa[spec1.f.get(x, x)], a.inv(spec2.f.get(u, u)));
                    centre.iter().copied().filter(|&c| a.mul(c, c) == target).collect()
                })
                .collect();
            if roots.iter().any(|r| r.is_empty()) {
                continue;
            }
            let mut solver = RhoSolver { spec1, spec2, al, aa, inv_al, roots, found: Vec::new() };
            let mut rho = vec![None; n];
            solver.dfs(0, &mut rho);
            for rho in solver.found {
                let w = MorphismWitness { alpha_s: al.clone(), alpha_a: aa.clone(), rho };
                let map = w.expand(spec1);
                if !preserves(&t1, &t2, &map) {
                    return Err(MorphismError::Violation(format!("{w:?} is not a table isomorphism")));
                }
                witnesses.push(w);
            }
        }
    }
    witnesses.sort();
    Ok(IsoSearch { witnesses, pairs_considered: considered, pairs_pruned: pruned })
}

/// The automorphism group `Γ` of one extension with the subgroups `Ψ`
/// (inducing the identity on `S` and `A`) and `Σ` (with `ρ ≡ 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroupReport {
    pub order: usize,
    pub psi: Vec<MorphismWitness>,
    pub sigma: Vec<MorphismWitness>,
    /// Elements of `Σ` with `α″ = id`.
    pub sigma_1: Vec<MorphismWitness>,
    /// Elements of `Σ` with `α′ = id`.
    pub sigma_2: Vec<MorphismWitness>,
    pub full: Vec<MorphismWitness>,
    pub psi_closed: bool,
    pub psi_commutative: bool,
    /// Every element of `Ψ` squares to the identity.
    pub psi_exponent_two: bool,
    /// `Ψ ∩ Σ` is the identity alone.
    pub psi_meets_sigma_trivially: bool,
    /// The kernel of every homomorphic `ρ` contains the derived subloop.
    pub kernels_contain_derived: bool,
    /// For Steiner-like specs with `|S| > 2`: on every `(α′, α″)`, the
    /// condition `f(x,x)^α″ = f(x^α′,x^α′)`, `c h(x^α′) = h(x^α′) c⁻¹ = h(x)^α″`
    /// agrees with `β_(α′,α″)` being an automorphism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homomorphic_condition_agrees: Option<bool>,
    /// First `(α′, α″)` where it does not.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homomorphic_condition_witness: Option<MorphismWitness>,
}

fn is_homomorphism(s: &LoopTable, a: &GroupTable, rho: &[usize]) -> bool {
    let n = s.order();
    (0..n).all(|x| (0..n).all(|y| rho[s.mul(x, y)] == a.mul(rho[x], rho[y])))
}

/// `f(x,x)^α″ = f(x^α′,x^α′)` and `c h(x^α′) = h(x^α′) c⁻¹ = h(x)^α″` for
/// one `c`, over `x ≠ e`.
fn homomorphic_condition(w: &WeightedSteinerLoop, al: &[usize], aa: &[usize]) -> bool {
    let a = w.a();
    let n = al.len();
    if n < 2 {
        return true;
    }
    let c = a.mul(aa[w.h(1)], a.inv(w.h(al[1])));
    (1..n).all(|x| {
        let u = al[x];
        aa[w.diag(x)] == w.diag(u) && a.mul(c, w.h(u)) == aa[w.h(x)] && a.mul(w.h(u), a.inv(c)) == aa[w.h(x)]
    })
}

pub fn automorphism_group(spec: &ExtensionSpec) -> Result<AutGroupReport, MorphismError> {
    let search = find_isomorphisms(spec, spec, SearchOptions::default())?;
    let full = search.witnesses;
    let a = &*spec.a;
    let psi: Vec<MorphismWitness> = full.iter().filter(|w| w.induces_identity()).cloned().collect();
    let sigma: Vec<MorphismWitness> = full.iter().filter(|w| w.rho.iter().all(|&r| r == 0)).cloned().collect();
    let is_id = |v: &[usize]| v.iter().enumerate().all(|(i, &x)| i == x);
    let sigma_1 = sigma.iter().filter(|w| is_id(&w.alpha_a)).cloned().collect();
    let sigma_2 = sigma.iter().filter(|w| is_id(&w.alpha_s)).cloned().collect();
    let psi_closed = psi.iter().all(|p| psi.iter().all(|q| psi.contains(&p.then(q, a))));
    let psi_commutative = psi.iter().all(|p| psi.iter().all(|q| p.then(q, a) == q.then(p, a)));
    let psi_exponent_two = psi.iter().all(|p| p.then(p, a).is_identity());
    let psi_meets_sigma_trivially = psi.iter().filter(|p| sigma.contains(p)).all(|p| p.is_identity());
    let derived = derived_subloop(&spec.s);
    let kernels_contain_derived = full
        .iter()
        .filter(|w| is_homomorphism(&spec.s, a, &w.rho))
        .all(|w| derived.members.iter().all(|&d| w.rho[d] == 0));

    let (mut agrees, mut witness) = (None, None);
    if let Some(weighted) = steiner_weights(spec).filter(|_| spec.s.order() > 2) {
        agrees = Some(true);
        let s_auts = loop_automorphisms(&spec.s)?;
        let a_auts = group_automorphisms(a)?;
        'outer: for al in &s_auts {
            for aa in &a_auts {
                let w = MorphismWitness { alpha_s: al.clone(), alpha_a: aa.clone(), rho: vec![0; al.len()] };
                if homomorphic_condition(&weighted, al, aa) != check_iso_equation(&w, spec, spec).holds {
                    agrees = Some(false);
                    witness = Some(w);
                    break 'outer;
                }
            }
        }
    }
    Ok(AutGroupReport {
        order: full.len(),
        psi,
        sigma,
        sigma_1,
        sigma_2,
        full,
        psi_closed,
        psi_commutative,
        psi_exponent_two,
        psi_meets_sigma_trivially,
        kernels_contain_derived,
        homomorphic_condition_agrees: agrees,
        homomorphic_condition_witness: witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{FactorSystem, Variant};
    use crate::steiner::{construct_sts, loop_from_sts};
    use crate::tables::make_group;
    use std::sync::Arc;

    fn group(name: &str) -> Arc<GroupTable> {
        Arc::new(make_group(&name.parse().unwrap()).unwrap())
    }

    fn sloop(n: usize) -> Arc<LoopTable> {
        Arc::new(loop_from_sts(&construct_sts(n).unwrap()))
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(loop_automorphisms(group("Z2^2").as_loop()).unwrap().len(), 6);
        assert_eq!(loop_automorphisms(&sloop(3)).unwrap().len(), 6);
        assert_eq!(loop_automorphisms(&sloop(7)).unwrap().len(), 168);
        assert_eq!(group_automorphisms(&group("S3")).unwrap().len(), 6);
        assert!(matches!(loop_automorphisms(&sloop(19)), Err(MorphismError::OrderCap { .. })));
    }

    #[test]
    fn identity_witness_satisfies_the_equation() {
        let w = WeightedSteinerLoop::new(sloop(3), group("S3"), &[1, 3, 2], &[0, 4, 0]).unwrap();
        let spec = w.spec(Variant::Standard);
        let c = check_iso_equation(&MorphismWitness::identity(4, 6), &spec, &spec);
        assert!(c.holds);
        assert_eq!((c.diagonal_form, c.off_diagonal_form), (Some(true), Some(true)));
    }

    #[test]
    fn z2_over_the_klein_loop() {
        let spec = ExtensionSpec::new(sloop(3), group("Z2"), FactorSystem::trivial(4), Variant::Standard).unwrap();
        let r = automorphism_group(&spec).unwrap();
        assert_eq!(r.psi.len(), 4);
        assert!(r.psi_closed && r.psi_commutative && r.psi_exponent_two && r.psi_meets_sigma_trivially);
        // Z2^3 has 168 automorphisms; those preserving the slice Z2 × {0}
        assert_eq!(r.order, 24);
        assert_eq!(r.sigma.len(), 6);
        let id = MorphismWitness::identity(4, 2);
        assert!(r.full.contains(&id));
        let json = serde_json::to_value(&id).unwrap();
        assert_eq!(json["rho"], serde_json::json!({"0": 0, "1": 0, "2": 0, "3": 0}));
        let back: MorphismWitness = serde_json::from_value(json).unwrap();
        assert_eq!(back, id);
    }

    #[test]
    fn trivial_centre_has_trivial_psi() {
        let spec = ExtensionSpec::new(sloop(3), group("S3"), FactorSystem::trivial(4), Variant::Standard).unwrap();
        let r = automorphism_group(&spec).unwrap();
        assert_eq!(r.psi.len(), 1);
        assert_eq!(r.order, 6 * 6);
    }

    #[test]
    fn pruning_does_not_change_answers() {
        let w1 = WeightedSteinerLoop::new(sloop(3), group("S3"), &[1, 3, 2], &[0, 0, 0]).unwrap();
        let w2 = WeightedSteinerLoop::new(sloop(3), group("S3"), &[1, 1, 2], &[0, 0, 0]).unwrap();
        for (p, q) in [(&w1, &w1), (&w1, &w2)] {
            let (s1, s2) = (p.spec(Variant::Standard), q.spec(Variant::Standard));
            let on = find_isomorphisms(&s1, &s2, SearchOptions { prune: true }).unwrap();
            let off = find_isomorphisms(&s1, &s2, SearchOptions { prune: false }).unwrap();
            assert_eq!(on.witnesses, off.witnesses);
            assert_eq!(off.pairs_pruned, 0);
        }
    }
}
