//! Exhaustive isomorphism search between small loops.
//!
//! Images are chosen for a greedy generating set only; every other image is
//! forced by multiplication, so the search tree has at most `n^g` leaves for
//! `g` generators.

use super::{subloop_generated, LoopTable};

fn greedy_generators(l: &LoopTable) -> Vec<usize> {
    let n = l.order();
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    for x in 1..n {
        if !inside[x] {
            gens.push(x);
            for y in subloop_generated(l, &gens) {
                inside[y] = true;
            }
        }
    }
    gens
}

struct Search<'a> {
    a: &'a LoopTable,
    b: &'a LoopTable,
    gens: Vec<usize>,
    inv_a: Vec<usize>,
    inv_b: Vec<usize>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

const NONE: usize = usize::MAX;

impl Search<'_> {
    /// Extends `map` after `x ↦ y`, closing under products. Returns false on
    /// a conflict.
    fn assign(&self, map: &mut [usize], used: &mut [bool], known: &mut Vec<usize>, x: usize, y: usize) -> bool {
        if map[x] != NONE {
            return map[x] == y;
        }
        if used[y] {
            return false;
        }
        map[x] = y;
        used[y] = true;
        known.push(x);
        let mut next = known.len() - 1;
        while next < known.len() {
            let w = known[next];
            next += 1;
            let mut i = 0;
            while i < next {
                let v = known[i];
                i += 1;
                for (p, q) in [(v, w), (w, v)] {
                    let r = self.a.mul(p, q);
                    let img = self.b.mul(map[p], map[q]);
                    if map[r] == NONE {
                        if used[img] {
                            return false;
                        }
                        map[r] = img;
                        used[img] = true;
                        known.push(r);
                    } else if map[r] != img {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize, map: Vec<usize>, used: Vec<bool>, known: Vec<usize>) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.gens.len() {
            self.found.push(map);
            return;
        }
        let x = self.gens[depth];
        if map[x] != NONE {
            self.dfs(depth + 1, map, used, known);
            return;
        }
        for y in 1..self.b.order() {
            if used[y] || self.inv_a[x] != self.inv_b[y] {
                continue;
            }
            let (mut m, mut u, mut k) = (map.clone(), used.clone(), known.clone());
            if self.assign(&mut m, &mut u, &mut k, x, y) {
                self.dfs(depth + 1, m, u, k);
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }
}

/// Up to `limit` isomorphisms `a → b`, each given as the image array.
pub fn isomorphisms(a: &LoopTable, b: &LoopTable, limit: usize) -> Vec<Vec<usize>> {
    let n = a.order();
    if n != b.order() || limit == 0 {
        return Vec::new();
    }
    let invariant = |l: &LoopTable| (0..n).map(|x| l.left_power_order(x)).collect::<Vec<_>>();
    let (inv_a, inv_b) = (invariant(a), invariant(b));
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Vec::new();
    }
    let mut search = Search { a, b, gens: greedy_generators(a), inv_a, inv_b, limit, found: Vec::new() };
    let mut map = vec![NONE; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    search.dfs(0, map, used, vec![0]);
    search.found
}

pub fn find_isomorphism(a: &LoopTable, b: &LoopTable) -> Option<Vec<usize>> {
    isomorphisms(a, b, 1).pop()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::make_group;

    fn g(name: &str) -> LoopTable {
        make_group(&name.parse().unwrap()).unwrap().as_loop().clone()
    }

    fn is_iso(a: &LoopTable, b: &LoopTable, m: &[usize]) -> bool {
        let n = a.order();
        (0..n).all(|x| (0..n).all(|y| m[a.mul(x, y)] == b.mul(m[x], m[y])))
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(isomorphisms(&g("Z2^2"), &g("Z2^2"), usize::MAX).len(), 6);
        assert_eq!(isomorphisms(&g("Z2^3"), &g("Z2^3"), usize::MAX).len(), 168);
        assert_eq!(isomorphisms(&g("S3"), &g("S3"), usize::MAX).len(), 6);
        assert_eq!(isomorphisms(&g("S4"), &g("S4"), usize::MAX).len(), 24);
        assert_eq!(isomorphisms(&g("Z8"), &g("Z8"), usize::MAX).len(), 4);
    }

    #[test]
    fn found_maps_are_isomorphisms() {
        let a = g("Z2xZ4");
        let b = g("Z4xZ2");
        let all = isomorphisms(&a, &b, usize::MAX);
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|m| is_iso(&a, &b, m)));
    }

    #[test]
    fn non_isomorphic_pairs() {
        assert!(find_isomorphism(&g("Z4"), &g("Z2^2")).is_none());
        assert!(find_isomorphism(&g("Z8"), &g("Z4xZ2")).is_none());
        assert!(find_isomorphism(&g("S3"), &g("Z6")).is_none());
        assert!(find_isomorphism(&g("Z3"), &g("Z4")).is_none());
    }
}
