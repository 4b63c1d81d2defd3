//! Translations of extension loops and the permutation groups they generate.
//!
//! Composition is `(p∘q)(x) = p(q(x))`: the right factor acts first.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{build_extension, ExtensionError, ExtensionSpec};
use crate::tables::LoopTable;

/// Default bound on the size of a generated group.
pub const CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("closure exceeded {cap} elements")]
    ClosureCap { cap: usize },
    #[error("permutations of different degrees {0} and {1}")]
    Degree(usize, usize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// A bijection of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<u16>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = String;
    fn try_from(images: Vec<usize>) -> Result<Self, String> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images.iter().map(|&v| v as usize).collect()
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        if n > usize::from(u16::MAX) {
            return Err(format!("degree {n} is too large"));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(format!("{images:?} is not a bijection of 0..{n}"));
            }
        }
        Ok(Self { images: images.into_iter().map(|v| v as u16).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u16).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// `λ_a: x ↦ a·x` (a row) or `ρ_a: x ↦ x·a` (a column).
pub fn translation(l: &LoopTable, a: usize, side: Side) -> Permutation {
    let n = l.order();
    let images = match side {
        Side::Left => l.row(a).to_vec(),
        Side::Right => (0..n).map(|x| l.mul(x, a) as u16).collect(),
    };
    Permutation { images }
}

/// A finite permutation group with its labelled generators. Elements are
/// listed in breadth-first order from the identity.
#[derive(Debug, Clone)]
pub struct PermGroupClosure {
    degree: usize,
    generators: Vec<(String, Permutation)>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermGroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[(String, Permutation)] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_subset_of(&self, other: &PermGroupClosure) -> bool {
        self.elements.iter().all(|p| other.contains(p))
    }

    pub fn same_elements(&self, other: &PermGroupClosure) -> bool {
        self.order() == other.order() && self.is_subset_of(other)
    }

    /// `self` is normal in `g`: closed under conjugation by the generators
    /// of `g`, which suffices for a finite group.
    pub fn is_normal_in(&self, g: &PermGroupClosure) -> bool {
        self.is_subset_of(g)
            && g.generators.iter().all(|(_, s)| {
                let s_inv = s.inverse();
                self.elements.iter().all(|n| self.contains(&s_inv.compose(n).compose(s)))
            })
    }

    pub fn intersection_order(&self, other: &PermGroupClosure) -> usize {
        self.elements.iter().filter(|p| other.contains(p)).count()
    }

    /// Every element commutes with every generator of `g`.
    pub fn is_central_in(&self, g: &PermGroupClosure) -> bool {
        g.generators.iter().all(|(_, s)| self.elements.iter().all(|n| s.compose(n) == n.compose(s)))
    }
}

/// The group generated by `generators`, in generator order.
pub fn close(
    degree: usize,
    generators: Vec<(String, Permutation)>,
    cap: usize,
) -> Result<PermGroupClosure, TranslationError> {
    if let Some((_, p)) = generators.iter().find(|(_, p)| p.degree() != degree) {
        return Err(TranslationError::Degree(degree, p.degree()));
    }
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0)]);
    let mut next = 0;
    while next < elements.len() {
        let current = elements[next].clone();
        next += 1;
        for (_, g) in &generators {
            let p = g.compose(&current);
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(TranslationError::ClosureCap { cap });
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
    }
    Ok(PermGroupClosure { degree, generators, elements, index })
}

fn labelled(
    spec: &ExtensionSpec,
    table: &LoopTable,
    side: Side,
    points: impl Iterator<Item = (usize, usize)>,
) -> Vec<(String, Permutation)> {
    let tag = match side {
        Side::Left => "lambda",
        Side::Right => "rho",
    };
    points.map(|(a, alpha)| (format!("{tag}({a},{alpha})"), translation(table, spec.encode(a, alpha), side))).collect()
}

fn all_points(spec: &ExtensionSpec) -> impl Iterator<Item = (usize, usize)> {
    let m = spec.a.order();
    (0..spec.s.order()).flat_map(move |a| (0..m).map(move |alpha| (a, alpha)))
}

/// The three translation groups of an extension and what is known about
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationReport {
    pub loop_order: usize,
    pub a_order: usize,
    pub a_abelian: bool,
    pub g_l_order: usize,
    pub g_r_order: usize,
    pub g_order: usize,
    pub g_l_equals_g_r: bool,
    /// `{ρ_(e,α)}` is a subgroup and `α ↦ ρ_(e,α⁻¹)` an isomorphism from `A`.
    pub a_slice_isomorphic: bool,
    pub a_slice_normal_in_g_r: bool,
    /// `|Σ|`, where `Σ = ⟨ρ_(a,1)⟩`.
    pub sigma_order: usize,
    /// `|Σ ∩ {ρ_(e,α)}|`.
    pub sigma_meets_a_slice: usize,
    /// `|G_r| / |A|`, the order of the quotient by the A-slice.
    pub quotient_order: usize,
    /// `|G_r| = |A|·|Σ|`.
    pub order_product: bool,
    /// `|G_r| = |A|·|Σ| / |Σ ∩ A-slice|`.
    pub order_product_corrected: bool,
    /// `ρ_(a,α) = ρ_(e,α) ∘ ρ_(a,1)` for every `(a, α)`.
    pub right_factorisation: bool,
    /// `ρ_(a,γ)⁻¹ ρ_(e,α) ρ_(a,γ) = ρ_(e,γαγ⁻¹)` for all `a, α, γ`.
    pub right_conjugation: bool,
    /// First `(a, α)` or `(a, α, γ)` breaking one of the two identities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

/// The groups with their elements, for callers that need more than orders.
#[derive(Debug, Clone)]
pub struct TranslationGroups {
    pub g_l: PermGroupClosure,
    pub g_r: PermGroupClosure,
    pub g: PermGroupClosure,
    pub sigma: PermGroupClosure,
    pub a_slice: PermGroupClosure,
    pub report: TranslationReport,
}

pub fn translation_groups(spec: &ExtensionSpec, cap: usize) -> Result<TranslationGroups, TranslationError> {
    let table = build_extension(spec)?;
    let n = table.order();
    let (s_order, a) = (spec.s.order(), &*spec.a);
    let m = a.order();
    let lefts = labelled(spec, &table, Side::Left, all_points(spec));
    let rights = labelled(spec, &table, Side::Right, all_points(spec));
    let g_l = close(n, lefts.clone(), cap)?;
    let g_r = close(n, rights.clone(), cap)?;
    let g = close(n, lefts.into_iter().chain(rights).collect(), cap)?;
    let sigma = close(n, labelled(spec, &table, Side::Right, (1..s_order).map(|x| (x, 0))), cap)?;
    let slice_gens = labelled(spec, &table, Side::Right, (0..m).map(|alpha| (0, alpha)));
    let a_slice = close(n, slice_gens.clone(), cap)?;

    let rho = |x: usize, alpha: usize| translation(&table, spec.encode(x, alpha), Side::Right);
    let slice: Vec<Permutation> = (0..m).map(|alpha| rho(0, alpha)).collect();
    // α ↦ ρ_(e,α) reverses products, so α ↦ ρ_(e,α⁻¹) is the homomorphism
    let a_slice_isomorphic = a_slice.order() == m
        && (0..m).all(|p| (0..m).all(|q| slice[a.inv(a.mul(p, q))] == slice[a.inv(p)].compose(&slice[a.inv(q)])));

    let mut witness = None;
    let right_factorisation = all_points(spec).all(|(x, alpha)| {
        let ok = rho(x, alpha) == slice[alpha].compose(&rho(x, 0));
        if !ok && witness.is_none() {
            witness = Some(vec![x, alpha]);
        }
        ok
    });
    let mut right_conjugation = true;
    'outer: for x in 0..s_order {
        for gamma in 0..m {
            let r = rho(x, gamma);
            let r_inv = r.inverse();
            for alpha in 0..m {
                let lhs = r_inv.compose(&slice[alpha]).compose(&r);
                if lhs != slice[a.mul3(gamma, alpha, a.inv(gamma))] {
                    right_conjugation = false;
                    if witness.is_none() {
                        witness = Some(vec![x, alpha, gamma]);
                    }
                    break 'outer;
                }
            }
        }
    }

    let meet = sigma.intersection_order(&a_slice);
    let report = TranslationReport {
        loop_order: n,
        a_order: m,
        a_abelian: a.is_abelian(),
        g_l_order: g_l.order(),
        g_r_order: g_r.order(),
        g_order: g.order(),
        g_l_equals_g_r: g_l.same_elements(&g_r),
        a_slice_isomorphic,
        a_slice_normal_in_g_r: a_slice.is_normal_in(&g_r),
        sigma_order: sigma.order(),
        sigma_meets_a_slice: meet,
        quotient_order: g_r.order() / a_slice.order(),
        order_product: g_r.order() == m * sigma.order(),
        order_product_corrected: g_r.order() * meet == m * sigma.order(),
        right_factorisation,
        right_conjugation,
        witness,
    };
    Ok(TranslationGroups { g_l, g_r, g, sigma, a_slice, report })
}

/// `ι_α: (x, ξ) ↦ (x, α⁻¹ξα)` for every `α`, and whether each is an
/// automorphism of the built table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaReport {
    pub all_automorphisms: bool,
    pub f_central: bool,
    /// `[α, p, q]` with `ι_α(p·q) ≠ ι_α(p)·ι_α(q)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub maps: Vec<Permutation>,
}

pub fn iota_map(spec: &ExtensionSpec, alpha: usize) -> Permutation {
    let a = &*spec.a;
    let images = (0..spec.order())
        .map(|p| {
            let (x, xi) = spec.decode(p);
            spec.encode(x, a.mul3(a.inv(alpha), xi, alpha)) as u16
        })
        .collect();
    Permutation { images }
}

pub fn iota_maps(spec: &ExtensionSpec) -> Result<IotaReport, TranslationError> {
    let table = build_extension(spec)?;
    let n = table.order();
    let maps: Vec<Permutation> = (0..spec.a.order()).map(|alpha| iota_map(spec, alpha)).collect();
    let mut witness = None;
    'outer: for (alpha, iota) in maps.iter().enumerate() {
        for p in 0..n {
            for q in 0..n {
                if iota.apply(table.mul(p, q)) != table.mul(iota.apply(p), iota.apply(q)) {
                    witness = Some(vec![alpha, p, q]);
                    break 'outer;
                }
            }
        }
    }
    Ok(IotaReport { all_automorphisms: witness.is_none(), f_central: spec.f_central(), witness, maps })
}

/// `G` against `⟨G_l, Λ⟩`, and the refinements that hold under central `f`
/// or a commutative table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub g_order: usize,
    pub g_l_lambda_order: usize,
    pub g_equals_g_l_lambda: bool,
    /// `ρ_(a,α) = ι_α ∘ λ_(a,α)` for all `(a, α)`; checked when `f` is central.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_from_left: Option<bool>,
    /// `{λ_(e,α)}` is a normal subgroup of `G_l`.
    pub left_slice_normal_in_g_l: bool,
    /// `|Σ′|`, where `Σ′ = ⟨λ_(a,1)⟩`.
    pub sigma_prime_order: usize,
    /// `{λ_(e,α)}` is central in `G`; checked for a commutative table.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_slice_central: Option<bool>,
}

pub fn full_group_decomposition(spec: &ExtensionSpec, cap: usize) -> Result<DecompositionReport, TranslationError> {
    let iota = iota_maps(spec)?;
    if let Some(w) = &iota.witness {
        return Err(TranslationError::HypothesisFailed(format!(
            "iota_{} is not an automorphism: products {} and {} are not preserved",
            w[0], w[1], w[2]
        )));
    }
    let table = build_extension(spec)?;
    let n = table.order();
    let m = spec.a.order();
    let lefts = labelled(spec, &table, Side::Left, all_points(spec));
    let rights = labelled(spec, &table, Side::Right, all_points(spec));
    let g = close(n, lefts.iter().cloned().chain(rights).collect(), cap)?;
    let lambda_gens = iota.maps.iter().enumerate().map(|(alpha, p)| (format!("iota({alpha})"), p.clone()));
    let g_l_lambda = close(n, lefts.iter().cloned().chain(lambda_gens).collect(), cap)?;
    let g_l = close(n, lefts, cap)?;
    let left_slice = close(n, labelled(spec, &table, Side::Left, (0..m).map(|alpha| (0, alpha))), cap)?;
    let sigma_prime = close(n, labelled(spec, &table, Side::Left, (1..spec.s.order()).map(|x| (x, 0))), cap)?;

    let right_from_left = iota.f_central.then(|| {
        all_points(spec).all(|(x, alpha)| {
            let p = spec.encode(x, alpha);
            translation(&table, p, Side::Right) == iota.maps[alpha].compose(&translation(&table, p, Side::Left))
        })
    });
    let left_slice_central = table.is_commutative().then(|| left_slice.is_central_in(&g));
    Ok(DecompositionReport {
        g_order: g.order(),
        g_l_lambda_order: g_l_lambda.order(),
        g_equals_g_l_lambda: g.same_elements(&g_l_lambda),
        right_from_left,
        left_slice_normal_in_g_l: left_slice.is_normal_in(&g_l),
        sigma_prime_order: sigma_prime.order(),
        left_slice_central,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{FactorSystem, Variant};
    use crate::steiner::{construct_sts, loop_from_sts};
    use crate::tables::{make_group, GroupTable};
    use crate::weighted::WeightedSteinerLoop;
    use std::sync::Arc;

    fn group(name: &str) -> Arc<GroupTable> {
        Arc::new(make_group(&name.parse().unwrap()).unwrap())
    }

    fn sloop(n: usize) -> Arc<LoopTable> {
        Arc::new(loop_from_sts(&construct_sts(n).unwrap()))
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let q = Permutation::new(vec![1, 0, 2]).unwrap();
        // q first, then p
        assert_eq!(p.compose(&q).images(), vec![2, 1, 0]);
        assert_eq!(p.order(), 3);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[1,2,0]");
        assert!(serde_json::from_str::<Permutation>("[0,3]").is_err());
    }

    #[test]
    fn steiner_translations_are_involutions() {
        let l = loop_from_sts(&construct_sts(9).unwrap());
        assert!(translation(&l, 0, Side::Left).is_identity());
        for a in 1..l.order() {
            let t = translation(&l, a, Side::Left);
            assert_eq!(t.order(), 2);
            assert_eq!(t, translation(&l, a, Side::Right));
        }
    }

    #[test]
    fn closure_orders() {
        let inv = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(close(3, vec![("t".into(), inv)], 10).unwrap().order(), 2);
        let z22 = make_group(&"Z2^2".parse().unwrap()).unwrap();
        let gens = (0..4).map(|a| (a.to_string(), translation(z22.as_loop(), a, Side::Left))).collect();
        assert_eq!(close(4, gens, 10).unwrap().order(), 4);
        let c5 = Permutation::new(vec![1, 2, 3, 4, 0, 5, 6]).unwrap();
        let c7 = Permutation::new(vec![0, 1, 3, 4, 5, 6, 2]).unwrap();
        let err = close(7, vec![("a".into(), c5), ("b".into(), c7)], 50).unwrap_err();
        assert_eq!(err, TranslationError::ClosureCap { cap: 50 });
    }

    #[test]
    fn abelian_a_gives_equal_one_sided_groups() {
        let w = WeightedSteinerLoop::new(sloop(3), group("Z4"), &[1, 2, 3], &[2, 0, 1]).unwrap();
        let t = translation_groups(&w.spec(Variant::Standard), CLOSURE_CAP).unwrap();
        assert!(t.report.g_l_equals_g_r);
        assert!(t.report.a_slice_isomorphic && t.report.a_slice_normal_in_g_r);
        assert!(t.report.right_factorisation && t.report.right_conjugation);
        assert!(t.report.order_product_corrected);
    }

    #[test]
    fn noncentral_s3_weight_separates_the_groups() {
        let w = WeightedSteinerLoop::new(sloop(3), group("S3"), &[1, 3, 2], &[0, 0, 0]).unwrap();
        let spec = w.spec(Variant::Standard);
        let t = translation_groups(&spec, CLOSURE_CAP).unwrap();
        assert!(!t.report.g_l_equals_g_r);
        assert!(t.report.a_slice_isomorphic && t.report.a_slice_normal_in_g_r);
        assert!(t.report.right_factorisation && t.report.right_conjugation);
        assert!(t.report.order_product_corrected);
        let iota = iota_maps(&spec).unwrap();
        assert!(!iota.all_automorphisms && !iota.f_central);
        assert!(matches!(full_group_decomposition(&spec, CLOSURE_CAP), Err(TranslationError::HypothesisFailed(_))));
    }

    #[test]
    fn central_f_decomposes() {
        // S3 weights in the trivial centre: h ≡ e, with a noncentral A
        let w = WeightedSteinerLoop::new(sloop(3), group("S3"), &[0; 3], &[0; 3]).unwrap();
        let d = full_group_decomposition(&w.spec(Variant::Standard), CLOSURE_CAP).unwrap();
        assert!(d.g_equals_g_l_lambda);
        assert_eq!(d.right_from_left, Some(true));
        assert!(d.left_slice_normal_in_g_l);
        assert_eq!(d.left_slice_central, None);
    }

    #[test]
    fn commutative_spec_has_central_slice() {
        let w = WeightedSteinerLoop::new(sloop(3), group("Z2"), &[1, 1, 0], &[1, 0, 1]).unwrap();
        let d = full_group_decomposition(&w.spec(Variant::Standard), CLOSURE_CAP).unwrap();
        assert!(d.g_equals_g_l_lambda);
        assert_eq!(d.left_slice_central, Some(true));
    }

    #[test]
    fn trivial_a_gives_the_loop_translation_group() {
        // the Fano loop is Z2^3, so its translations form a group of order 8
        let spec = ExtensionSpec::new(sloop(7), group("Z1"), FactorSystem::trivial(8), Variant::Standard).unwrap();
        let t = translation_groups(&spec, CLOSURE_CAP).unwrap();
        assert!(t.report.g_l_equals_g_r);
        assert_eq!((t.report.g_order, t.report.g_l_order, t.report.sigma_order), (8, 8, 8));
    }
}
