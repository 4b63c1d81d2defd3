//! Restricted Fischer groups, weighted Steiner triple systems, Fischer
//! spaces, the affine coverings `AG(n,3) → L(I)`, and the distributive
//! symmetric quasigroup of a bijective weighting.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::steiner::{validate_sts, SteinerError, SteinerTripleSystem};
use crate::tables::{make_group, subgroup_generated, GroupKind, GroupTable, MagmaTable, TableError, ORDER_CAP};
use crate::Check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FischerError {
    #[error("w({point}) is not an involution")]
    NotInvolution { point: usize },
    #[error("w(x) w(y) w(x) = w(xy) fails on block {block:?}")]
    BlockViolation { block: [usize; 3] },
    #[error("the group generated by the weights is abelian")]
    DegenerateAbelian,
    #[error("points {0} and {1} have the same weight")]
    NotBijective(usize, usize),
    #[error("{points} points exceed the order cap {cap}")]
    OrderCap { points: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structure check failed: {0}")]
    Violation(String),
    #[error(transparent)]
    Steiner(#[from] SteinerError),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Why a generating set fails to make a restricted Fischer group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FischerFailure {
    NotGenerating { generated_order: usize },
    NotInvolution { x: usize },
    ProductOrder { x: usize, y: usize },
    NotClosed { x: usize, y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FischerCheck {
    pub holds: bool,
    pub failure: Option<FischerFailure>,
}

/// A group with a distinguished generating set of involutions.
#[derive(Debug, Clone)]
pub struct FischerPair {
    pub g: Arc<GroupTable>,
    pub e_set: Vec<usize>,
}

/// `E` generates `G`, consists of involutions, and `(xy)³ = 1`,
/// `xyx ∈ E` for all `x, y ∈ E`.
pub fn is_restricted_fischer(g: &GroupTable, e_set: &[usize]) -> FischerCheck {
    let fail = |f| FischerCheck { holds: false, failure: Some(f) };
    let generated = subgroup_generated(g, e_set);
    if generated.len() != g.order() {
        return fail(FischerFailure::NotGenerating { generated_order: generated.len() });
    }
    let trivial = g.order() == 1;
    if let Some(&x) = e_set.iter().find(|&&x| !(g.element_order(x) == 2 || trivial)) {
        return fail(FischerFailure::NotInvolution { x });
    }
    let members: BTreeSet<usize> = e_set.iter().copied().collect();
    for &x in &members {
        for &y in &members {
            let xy = g.mul(x, y);
            if g.pow(xy, 3) != 0 {
                return fail(FischerFailure::ProductOrder { x, y });
            }
            if !members.contains(&g.mul3(x, y, x)) {
                return fail(FischerFailure::NotClosed { x, y });
            }
        }
    }
    FischerCheck { holds: true, failure: None }
}

/// A triple system with points `1..=n` weighted by involutions of `g`.
#[derive(Debug, Clone)]
pub struct WeightedSts {
    pub sts: SteinerTripleSystem,
    pub g: Arc<GroupTable>,
    // w[0] is a placeholder so that w[p] is the weight of point p
    w: Vec<usize>,
}

impl WeightedSts {
    #[inline]
    pub fn w(&self, point: usize) -> usize {
        self.w[point]
    }

    /// Weights of the points `1..=n`.
    pub fn weights(&self) -> &[usize] {
        &self.w[1..]
    }

    /// The image set `I`, sorted.
    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.weights().iter().copied().collect();
        set.into_iter().collect()
    }

    /// Fibres `V_i = w⁻¹(w_i)`, in the order of [`WeightedSts::image`].
    pub fn fibres(&self) -> Vec<Vec<usize>> {
        self.image().into_iter().map(|v| (1..self.w.len()).filter(|&p| self.w[p] == v).collect()).collect()
    }
}

/// `weights` lists `w(1), …, w(n)`.
pub fn validate_weighted_sts(
    sts: SteinerTripleSystem,
    g: Arc<GroupTable>,
    weights: &[usize],
) -> Result<WeightedSts, FischerError> {
    let n = sts.point_count();
    if weights.len() != n {
        return Err(FischerError::Precondition(format!("need {n} weights, got {}", weights.len())));
    }
    if let Some(&v) = weights.iter().find(|&&v| v >= g.order()) {
        return Err(FischerError::Precondition(format!("{v} is not an element of the group")));
    }
    let w: Vec<usize> = std::iter::once(0).chain(weights.iter().copied()).collect();
    if let Some(point) = (1..=n).find(|&p| g.element_order(w[p]) != 2) {
        return Err(FischerError::NotInvolution { point });
    }
    for &block in sts.blocks() {
        let [a, b, c] = block;
        for (x, y, z) in [(a, b, c), (b, a, c), (a, c, b), (c, a, b), (b, c, a), (c, b, a)] {
            if g.mul3(w[x], w[y], w[x]) != w[z] {
                return Err(FischerError::BlockViolation { block });
            }
        }
    }
    Ok(WeightedSts { sts, g, w })
}

/// Points are the involutions of `I`; lines are `{a, b, aba}` for
/// non-commuting `a, b ∈ I`. Both are stored as group elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FischerSpace {
    pub points: Vec<usize>,
    pub lines: Vec<[usize; 3]>,
}

impl FischerSpace {
    /// Map from an ordered pair of distinct collinear points to the third.
    fn third_points(&self) -> HashMap<(usize, usize), usize> {
        let mut third = HashMap::new();
        for &[a, b, c] in &self.lines {
            for (p, q, r) in [(a, b, c), (b, a, c), (a, c, b), (c, a, b), (b, c, a), (c, b, a)] {
                third.insert((p, q), r);
            }
        }
        third
    }
}

/// The Fischer space of the image set together with the map `φ`
/// (point ↦ group element); `φ` is verified to be a homomorphism of triple
/// systems: each block goes to one point or onto a line.
pub fn fischer_space(ws: &WeightedSts) -> Result<(FischerSpace, Vec<usize>), FischerError> {
    let g = &*ws.g;
    let points = ws.image();
    let generated = subgroup_generated(g, &points);
    if generated.members.iter().all(|&p| generated.members.iter().all(|&q| g.commute(p, q))) {
        return Err(FischerError::DegenerateAbelian);
    }
    let mut lines = BTreeSet::new();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            if !g.commute(a, b) {
                let mut line = [a, b, g.mul3(a, b, a)];
                line.sort_unstable();
                lines.insert(line);
            }
        }
    }
    let space = FischerSpace { points, lines: lines.into_iter().collect() };
    let line_set: BTreeSet<[usize; 3]> = space.lines.iter().copied().collect();
    for &[x, y, z] in ws.sts.blocks() {
        let (a, b, c) = (ws.w(x), ws.w(y), ws.w(z));
        let collapsed = a == b && b == c;
        let mut image = [a, b, c];
        image.sort_unstable();
        let onto_line = a != b && b != c && a != c && line_set.contains(&image);
        if !(collapsed || onto_line) {
            return Err(FischerError::Violation(format!(
                "block {:?} maps neither to a point nor onto a line",
                [x, y, z]
            )));
        }
    }
    let phi = std::iter::once(0).chain(ws.weights().iter().copied()).collect();
    Ok((space, phi))
}

/// The affine covering of the Fischer space of `(Z3)^s ⋊ Z2` by `AG(n,3)`.
#[derive(Debug, Clone)]
pub struct AffineCovering {
    pub pair: FischerPair,
    pub weighted: WeightedSts,
    pub s: usize,
    pub n: usize,
}

fn base3(mut x: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut() {
        *slot = x % 3;
        x /= 3;
    }
    d
}

fn pack3(d: &[usize]) -> usize {
    d.iter().rev().fold(0, |acc, &z| acc * 3 + z)
}

/// The lines `{p, q, −p−q}` of `AG(n,3)`; the point `z ∈ (Z3)^n` has
/// index `1 + Σ z_i 3^i`.
pub fn affine_sts(n: usize) -> Result<SteinerTripleSystem, FischerError> {
    let size = 3usize
        .checked_pow(n as u32)
        .filter(|&v| v < ORDER_CAP)
        .ok_or(FischerError::OrderCap { points: usize::MAX, cap: ORDER_CAP - 1 })?;
    let mut blocks = Vec::new();
    for p in 0..size {
        let dp = base3(p, n);
        for q in p + 1..size {
            let dq = base3(q, n);
            let r: Vec<usize> = dp.iter().zip(&dq).map(|(&a, &b)| (6 - a - b) % 3).collect();
            let r = pack3(&r);
            if r > q {
                blocks.push([p + 1, q + 1, r + 1]);
            }
        }
    }
    Ok(validate_sts(size, blocks)?)
}

/// `w(z) = (τ(z), 1)` with `τ(z₁,…,zₙ) = (z₁,…,z_s)`.
pub fn affine_covering(s: usize, n: usize) -> Result<AffineCovering, FischerError> {
    if !(n > s && s >= 1) {
        return Err(FischerError::Precondition(format!("need n > s >= 1, got s = {s}, n = {n}")));
    }
    let sts = affine_sts(n)?;
    let g = Arc::new(make_group(&GroupKind::Gf3Semidirect { s })?);
    let v = 3usize.pow(s as u32);
    let weights: Vec<usize> = (0..sts.point_count()).map(|z| v + pack3(&base3(z, n)[..s])).collect();
    let weighted = validate_weighted_sts(sts, g.clone(), &weights)?;
    let e_set = weighted.image();
    Ok(AffineCovering { pair: FischerPair { g, e_set }, weighted, s, n })
}

/// True when every non-collinear triple of points closes, under completing
/// lines, to 9 pairwise collinear points carrying 12 lines.
pub fn hall_system_check(space: &FischerSpace) -> bool {
    let third = space.third_points();
    let pts = &space.points;
    let k = pts.len();
    let triples: Vec<(usize, usize, usize)> =
        (0..k).flat_map(|i| (i + 1..k).flat_map(move |j| (j + 1..k).map(move |l| (i, j, l)))).collect();
    triples.par_iter().all(|&(i, j, l)| {
        let (a, b, c) = (pts[i], pts[j], pts[l]);
        if third.get(&(a, b)) == Some(&c) {
            return true;
        }
        let mut set = vec![a, b, c];
        let mut done = 0;
        while done < set.len() {
            let w = set[done];
            done += 1;
            for idx in 0..done {
                if let Some(&r) = third.get(&(set[idx], w)) {
                    if !set.contains(&r) {
                        set.push(r);
                    }
                }
            }
            if set.len() > 9 {
                return false;
            }
        }
        if set.len() != 9 {
            return false;
        }
        let collinear = set.iter().all(|&p| set.iter().all(|&q| p == q || third.contains_key(&(p, q))));
        let lines = space.lines.iter().filter(|line| line.iter().all(|p| set.contains(p))).count();
        collinear && lines == 12
    })
}

/// Results of the three quasigroup scans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasigroupProperties {
    pub idempotent: Check,
    pub symmetric: Check,
    pub left_distributive: Check,
}

impl QuasigroupProperties {
    pub fn all_hold(&self) -> bool {
        self.idempotent.holds && self.symmetric.holds && self.left_distributive.holds
    }
}

/// Idempotence `x∗x = x`, symmetry `x∗y = y∗x` and `x∗(x∗y) = y`, and left
/// distributivity `x∗(y∗z) = (x∗y)∗(x∗z)`, each with its least witness.
pub fn quasigroup_properties(m: &MagmaTable) -> QuasigroupProperties {
    let n = m.order();
    let idempotent = Check::from_witness((0..n).find(|&x| m.get(x, x) != x).map(|x| vec![x]));
    let symmetric = Check::from_witness(
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| m.get(x, y) != m.get(y, x) || m.get(x, m.get(x, y)) != y)
            .map(|(x, y)| vec![x, y]),
    );
    let left_distributive = Check::from_witness(
        (0..n)
            .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
            .find(|&(x, y, z)| m.get(x, m.get(y, z)) != m.get(m.get(x, y), m.get(x, z)))
            .map(|(x, y, z)| vec![x, y, z]),
    );
    QuasigroupProperties { idempotent, symmetric, left_distributive }
}

/// `x∗x = x` and `x∗y` the third point of the block through `x, y`; the
/// point `p` has index `p - 1`.
pub fn distributive_quasigroup(ws: &WeightedSts) -> Result<MagmaTable, FischerError> {
    let n = ws.sts.point_count();
    for x in 1..=n {
        if let Some(y) = (x + 1..=n).find(|&y| ws.w(x) == ws.w(y)) {
            return Err(FischerError::NotBijective(x, y));
        }
    }
    let g = &*ws.g;
    let image = ws.image();
    let generated = subgroup_generated(g, &image);
    if generated.members.iter().all(|&p| generated.members.iter().all(|&q| g.commute(p, q))) {
        return Err(FischerError::DegenerateAbelian);
    }
    let mut third = vec![0usize; (n + 1) * (n + 1)];
    for &[a, b, c] in ws.sts.blocks() {
        for (p, q, r) in [(a, b, c), (b, a, c), (a, c, b), (c, a, b), (b, c, a), (c, b, a)] {
            third[p * (n + 1) + q] = r;
        }
    }
    let m = MagmaTable::from_fn(n, |x, y| if x == y { x } else { third[(x + 1) * (n + 1) + y + 1] - 1 })?;
    let props = quasigroup_properties(&m);
    if !props.all_hold() {
        return Err(FischerError::Violation(format!("quasigroup scans failed: {props:?}")));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::construct_sts;

    fn group(name: &str) -> Arc<GroupTable> {
        Arc::new(make_group(&name.parse().unwrap()).unwrap())
    }

    fn involutions(g: &GroupTable) -> Vec<usize> {
        (0..g.order()).filter(|&x| g.element_order(x) == 2).collect()
    }

    #[test]
    fn restricted_fischer_examples() {
        let s3 = group("S3");
        assert!(is_restricted_fischer(&s3, &involutions(&s3)).holds);
        let z2 = group("Z2");
        assert!(is_restricted_fischer(&z2, &[1]).holds);
        let s4 = group("S4");
        let perms = crate::tables::symmetric_permutations(4);
        let transpositions: Vec<usize> =
            (0..24).filter(|&i| perms[i].iter().enumerate().filter(|&(k, &v)| k != v).count() == 2).collect();
        assert_eq!(transpositions.len(), 6);
        let r = is_restricted_fischer(&s4, &transpositions);
        assert!(!r.holds);
        assert!(matches!(r.failure, Some(FischerFailure::ProductOrder { .. })));
        // a proper generating subset fails generation
        assert!(matches!(
            is_restricted_fischer(&s3, &involutions(&s3)[..1]).failure,
            Some(FischerFailure::NotGenerating { generated_order: 2 })
        ));
    }

    #[test]
    fn constant_weight_is_valid_and_degenerate() {
        let sts = construct_sts(7).unwrap();
        let ws = validate_weighted_sts(sts, group("Z2"), &[1; 7]).unwrap();
        assert_eq!(ws.image(), vec![1]);
        assert_eq!(fischer_space(&ws).unwrap_err(), FischerError::DegenerateAbelian);
    }

    #[test]
    fn ag23_weighting() {
        let cov = affine_covering(2, 2);
        assert!(matches!(cov, Err(FischerError::Precondition(_))));
        // the bijective AG(2,3) weighting into GF3^2:2
        let sts = affine_sts(2).unwrap();
        let g = group("GF3^2:2");
        let weights: Vec<usize> = (0..9).map(|z| 9 + z).collect();
        let ws = validate_weighted_sts(sts, g, &weights).unwrap();
        let (space, phi) = fischer_space(&ws).unwrap();
        assert_eq!(space.points.len(), 9);
        assert_eq!(space.lines.len(), 12);
        let mut img = phi[1..].to_vec();
        img.sort_unstable();
        img.dedup();
        assert_eq!(img.len(), 9);
        assert!(hall_system_check(&space));
        let m = distributive_quasigroup(&ws).unwrap();
        assert!(quasigroup_properties(&m).all_hold());
        // the I-side operation a∘b = aba matches x∗y under w
        for x in 0..9 {
            for y in 0..9 {
                let (wx, wy) = (ws.w(x + 1), ws.w(y + 1));
                assert_eq!(ws.w(m.get(x, y) + 1), ws.g.mul3(wx, wy, wx));
            }
        }
    }

    #[test]
    fn perturbed_weight_violates_a_block() {
        let sts = affine_sts(2).unwrap();
        let mut weights: Vec<usize> = (0..9).map(|z| 9 + z).collect();
        weights[4] = 9;
        let err = validate_weighted_sts(sts, group("GF3^2:2"), &weights).unwrap_err();
        assert!(matches!(err, FischerError::BlockViolation { .. }));
    }

    #[test]
    fn non_involution_weight() {
        let sts = construct_sts(3).unwrap();
        let err = validate_weighted_sts(sts, group("Z4"), &[1, 1, 1]).unwrap_err();
        assert_eq!(err, FischerError::NotInvolution { point: 1 });
    }

    #[test]
    fn collapse_onto_three_transpositions() {
        // AG(2,3) covering onto S3: τ drops the second coordinate
        let cov = affine_covering(1, 2).unwrap();
        assert_eq!(cov.weighted.sts.point_count(), 9);
        assert_eq!(cov.pair.g.order(), 6);
        let (space, _) = fischer_space(&cov.weighted).unwrap();
        assert_eq!(space.points.len(), 3);
        assert_eq!(space.lines.len(), 1);
        assert!(hall_system_check(&space));
        assert!(is_restricted_fischer(&cov.pair.g, &cov.pair.e_set).holds);
        assert!(matches!(distributive_quasigroup(&cov.weighted), Err(FischerError::NotBijective(..))));
    }

    #[test]
    fn ag33_covering_of_the_rank_two_space() {
        let cov = affine_covering(2, 3).unwrap();
        assert_eq!(cov.weighted.sts.point_count(), 27);
        assert_eq!(cov.pair.e_set.len(), 9);
        assert!(is_restricted_fischer(&cov.pair.g, &cov.pair.e_set).holds);
        let (space, _) = fischer_space(&cov.weighted).unwrap();
        assert!(hall_system_check(&space));
    }

    #[test]
    fn fibres_are_subsystems() {
        let cov = affine_covering(1, 3).unwrap();
        let ws = &cov.weighted;
        for fibre in ws.fibres() {
            for &[a, b, c] in ws.sts.blocks() {
                let inside = [a, b, c].iter().filter(|p| fibre.contains(p)).count();
                assert_ne!(inside, 2);
            }
        }
    }

    #[test]
    fn non_affine_space_is_not_hall() {
        // S4 transpositions: the Fischer space has commuting (non-collinear)
        // pairs, so triples containing them cannot close to an affine plane.
        let s4 = group("S4");
        let perms = crate::tables::symmetric_permutations(4);
        let points: Vec<usize> =
            (0..24).filter(|&i| perms[i].iter().enumerate().filter(|&(k, &v)| k != v).count() == 2).collect();
        let mut lines = BTreeSet::new();
        for &a in &points {
            for &b in &points {
                if a < b && !s4.commute(a, b) {
                    let mut l = [a, b, s4.mul3(a, b, a)];
                    l.sort_unstable();
                    lines.insert(l);
                }
            }
        }
        let space = FischerSpace { points, lines: lines.into_iter().collect() };
        assert!(!hall_system_check(&space));
        let single = FischerSpace { points: vec![1, 2, 3], lines: vec![[1, 2, 3]] };
        assert!(hall_system_check(&single));
    }
}
