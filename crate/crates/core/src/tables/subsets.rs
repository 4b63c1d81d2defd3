//! Distinguished subsets of a loop: nuclei, centre, derived subloop,
//! generated subloops, and quotients by normal subloops.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GroupTable, LoopTable, TableError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetLabel {
    LeftNucleus,
    RightNucleus,
    MiddleNucleus,
    Nucleus,
    Centre,
    Derived,
    Commutator,
    Generated,
}

/// A sorted set of element indices together with what it denotes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub members: Vec<usize>,
    pub label: SubsetLabel,
}

impl SubsetReport {
    pub fn new(mut members: Vec<usize>, label: SubsetLabel) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members, label }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &SubsetReport) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nuclei {
    pub left: SubsetReport,
    pub right: SubsetReport,
    pub middle: SubsetReport,
    pub nucleus: SubsetReport,
}

fn filter_par(n: usize, pred: impl Fn(usize) -> bool + Sync) -> Vec<usize> {
    (0..n).into_par_iter().filter(|&u| pred(u)).collect()
}

/// `N_l`, `N_r`, `N_m` and `N = N_l ∩ N_r ∩ N_m`.
pub fn nuclei(l: &LoopTable) -> Nuclei {
    let n = l.order();
    let all_pairs = |p: &(dyn Fn(usize, usize) -> bool + Sync)| (0..n).all(|x| (0..n).all(|y| p(x, y)));
    let left = filter_par(n, |u| all_pairs(&|x, y| l.mul(l.mul(u, x), y) == l.mul(u, l.mul(x, y))));
    let middle = filter_par(n, |u| all_pairs(&|x, y| l.mul(l.mul(x, u), y) == l.mul(x, l.mul(u, y))));
    let right = filter_par(n, |u| all_pairs(&|x, y| l.mul(l.mul(x, y), u) == l.mul(x, l.mul(y, u))));
    let nucleus: Vec<usize> =
        left.iter().copied().filter(|u| middle.binary_search(u).is_ok() && right.binary_search(u).is_ok()).collect();
    Nuclei {
        left: SubsetReport::new(left, SubsetLabel::LeftNucleus),
        right: SubsetReport::new(right, SubsetLabel::RightNucleus),
        middle: SubsetReport::new(middle, SubsetLabel::MiddleNucleus),
        nucleus: SubsetReport::new(nucleus, SubsetLabel::Nucleus),
    }
}

/// Nucleus elements commuting with every element.
pub fn centre(l: &LoopTable) -> SubsetReport {
    let n = l.order();
    let commuting: Vec<usize> = (0..n).filter(|&z| (0..n).all(|x| l.mul(z, x) == l.mul(x, z))).collect();
    if commuting.len() == 1 {
        return SubsetReport::new(commuting, SubsetLabel::Centre);
    }
    let nucleus = nuclei(l).nucleus;
    let members = commuting.into_iter().filter(|&z| nucleus.contains(z)).collect();
    SubsetReport::new(members, SubsetLabel::Centre)
}

/// Smallest subloop containing every commutator `(yx)\(xy)` and every
/// associator `(x(yz))\((xy)z)`.
pub fn derived_subloop(l: &LoopTable) -> SubsetReport {
    let n = l.order();
    let mut seen = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            seen[l.left_div(l.mul(y, x), l.mul(x, y))] = true;
        }
    }
    let assoc: Vec<bool> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut local = vec![false; n];
            for y in 0..n {
                let xy = l.mul(x, y);
                for z in 0..n {
                    local[l.left_div(l.mul(x, l.mul(y, z)), l.mul(xy, z))] = true;
                }
            }
            local
        })
        .reduce(|| vec![false; n], |a, b| a.iter().zip(&b).map(|(p, q)| *p || *q).collect());
    let gens: Vec<usize> = (0..n).filter(|&v| seen[v] || assoc[v]).collect();
    SubsetReport::new(subloop_generated(l, &gens), SubsetLabel::Derived)
}

/// Closure of `{e} ∪ gens` under multiplication and both divisions.
pub fn subloop_generated(l: &LoopTable, gens: &[usize]) -> Vec<usize> {
    let n = l.order();
    let mut member = vec![false; n];
    let mut list = vec![0usize];
    member[0] = true;
    for &g in gens {
        if !member[g] {
            member[g] = true;
            list.push(g);
        }
    }
    // Every newly added element is combined with everything known so far,
    // so each unordered pair is processed once.
    let mut done = 1;
    while done < list.len() {
        let w = list[done];
        done += 1;
        let mut i = 0;
        while i < done {
            let v = list[i];
            i += 1;
            for c in
                [l.mul(v, w), l.mul(w, v), l.left_div(v, w), l.left_div(w, v), l.right_div(v, w), l.right_div(w, v)]
            {
                if !member[c] {
                    member[c] = true;
                    list.push(c);
                }
            }
        }
    }
    (0..n).filter(|&x| member[x]).collect()
}

pub fn subgroup_generated(g: &GroupTable, gens: &[usize]) -> SubsetReport {
    SubsetReport::new(subloop_generated(g.as_loop(), gens), SubsetLabel::Generated)
}

/// True when `members` contains the identity and is closed under products.
pub fn is_subloop(l: &LoopTable, members: &[usize]) -> bool {
    closure_witness(l, members).is_none() && members.contains(&0)
}

fn closure_witness(l: &LoopTable, members: &[usize]) -> Option<(usize, usize)> {
    let mut inside = vec![false; l.order()];
    for &m in members {
        inside[m] = true;
    }
    for &x in members {
        for &y in members {
            if !inside[l.mul(x, y)] {
                return Some((x, y));
            }
        }
    }
    None
}

/// The subloop on `members` as a standalone table, with the embedding
/// (new index → old index). Members are taken in increasing order.
pub fn subtable(l: &LoopTable, members: &[usize]) -> Result<(LoopTable, Vec<usize>), TableError> {
    let mut embed = members.to_vec();
    embed.sort_unstable();
    embed.dedup();
    if embed.first() != Some(&0) {
        return Err(TableError::NoIdentity(0));
    }
    if let Some((x, y)) = closure_witness(l, &embed) {
        return Err(TableError::NotClosed(x, y));
    }
    let mut index = vec![usize::MAX; l.order()];
    for (i, &m) in embed.iter().enumerate() {
        index[m] = i;
    }
    let sub = LoopTable::from_fn(embed.len(), |i, j| index[l.mul(embed[i], embed[j])])?;
    Ok((sub, embed))
}

/// A quotient table with the projection from the parent.
#[derive(Debug, Clone)]
pub struct Quotient<T> {
    pub table: T,
    pub projection: Vec<usize>,
}

/// Quotient by a normal subloop: the left cosets must partition the loop
/// and form a congruence.
pub fn quotient_loop(l: &LoopTable, n: &SubsetReport) -> Result<Quotient<LoopTable>, TableError> {
    let order = l.order();
    if !n.contains(0) {
        return Err(TableError::NoIdentity(0));
    }
    if let Some((x, y)) = closure_witness(l, &n.members) {
        return Err(TableError::NotClosed(x, y));
    }
    let mut class = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in &n.members {
            let y = l.mul(x, m);
            if class[y] != usize::MAX {
                return Err(TableError::NotNormal { x, y });
            }
            class[y] = c;
        }
    }
    let k = reps.len();
    let rep_product = |a: usize, b: usize| class[l.mul(reps[a], reps[b])];
    for x in 0..order {
        for y in 0..order {
            if class[l.mul(x, y)] != rep_product(class[x], class[y]) {
                return Err(TableError::NotNormal { x, y });
            }
        }
    }
    let table = LoopTable::from_fn(k, rep_product)?;
    Ok(Quotient { table, projection: class })
}

pub fn quotient_group(g: &GroupTable, n: &SubsetReport) -> Result<Quotient<GroupTable>, TableError> {
    let q = quotient_loop(g.as_loop(), n)?;
    Ok(Quotient { table: GroupTable::from_loop(q.table)?, projection: q.projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{make_group, GroupKind};

    fn group(name: &str) -> GroupTable {
        make_group(&name.parse().unwrap()).unwrap()
    }

    fn associative_subtable(l: &LoopTable, s: &SubsetReport) -> bool {
        subtable(l, &s.members).map(|(t, _)| t.is_associative()).unwrap_or(false)
    }

    #[test]
    fn nuclei_of_a_group_are_everything() {
        let g = group("S3");
        let nu = nuclei(g.as_loop());
        for s in [&nu.left, &nu.right, &nu.middle, &nu.nucleus] {
            assert_eq!(s.members, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn centres_of_small_groups() {
        assert_eq!(centre(group("Z4xZ2").as_loop()).len(), 8);
        assert_eq!(centre(group("S3").as_loop()).members, vec![0]);
        assert_eq!(centre(group("S4").as_loop()).members, vec![0]);
        assert_eq!(group("S4").centre_members(), vec![0]);
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(derived_subloop(group("Z8").as_loop()).members, vec![0]);
        assert_eq!(derived_subloop(group("Z2^3").as_loop()).members, vec![0]);
        let s3 = group("S3");
        let d = derived_subloop(s3.as_loop());
        assert_eq!(d.len(), 3);
        assert!(d.members.iter().all(|&x| s3.element_order(x) != 2));
        let q = quotient_group(&s3, &d).unwrap();
        assert!(q.table.is_abelian());
        let s4 = group("S4");
        let d4 = derived_subloop(s4.as_loop());
        assert_eq!(d4.len(), 12);
        assert!(quotient_group(&s4, &d4).unwrap().table.is_abelian());
    }

    #[test]
    fn generated_subgroups() {
        let s3 = group("S3");
        assert_eq!(subgroup_generated(&s3, &[]).members, vec![0]);
        let transpositions: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) == 2).collect();
        assert_eq!(subgroup_generated(&s3, &transpositions[..2]).len(), 6);
        // (1,0) in Z4 x Z2 is index 1*2 + 0 = 2
        let g = group("Z4xZ2");
        assert_eq!(subgroup_generated(&g, &[2]).members, vec![0, 2, 4, 6]);
    }

    #[test]
    fn quotients() {
        let s3 = group("S3");
        let whole = SubsetReport::new((0..6).collect(), SubsetLabel::Generated);
        assert_eq!(quotient_group(&s3, &whole).unwrap().table.order(), 1);
        let a3 = derived_subloop(s3.as_loop());
        let q = quotient_group(&s3, &a3).unwrap();
        assert_eq!(q.table.order(), 2);
        let z4 = group("Z4");
        let q = quotient_group(&z4, &SubsetReport::new(vec![0, 2], SubsetLabel::Generated)).unwrap();
        assert_eq!(q.table.order(), 2);
        assert_eq!(q.projection, vec![0, 1, 0, 1]);
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let s3 = group("S3");
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = subgroup_generated(&s3, &[t]);
        assert!(matches!(quotient_group(&s3, &h), Err(TableError::NotNormal { .. })));
    }

    #[test]
    fn quotient_projection_is_a_homomorphism() {
        for (name, gens) in [("S4", vec![]), ("Z4xZ2", vec![1]), ("GF3^2:2", vec![1, 3])] {
            let g = group(name);
            let n = if gens.is_empty() { derived_subloop(g.as_loop()) } else { subgroup_generated(&g, &gens) };
            let q = quotient_group(&g, &n).unwrap();
            assert_eq!(q.table.order() * n.len(), g.order());
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(q.projection[g.mul(x, y)], q.table.mul(q.projection[x], q.projection[y]));
                }
            }
        }
    }

    #[test]
    fn nuclei_are_associative_subloops() {
        let g = make_group(&GroupKind::Symmetric { n: 3 }).unwrap();
        let nu = nuclei(g.as_loop());
        for s in [&nu.left, &nu.right, &nu.middle, &nu.nucleus] {
            assert!(is_subloop(g.as_loop(), &s.members));
            assert!(associative_subtable(g.as_loop(), s));
        }
    }
}
