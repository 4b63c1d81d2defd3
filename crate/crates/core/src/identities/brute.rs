//! Exhaustive evaluation of each identity over a Cayley table.
//!
//! Variables are scanned in the order they are quantified (`x`, then `y`,
//! then `z`), so the first failure found is the lexicographically least
//! witness. A variable starts at 1 when the identity element can never make
//! the law fail in that position.

use super::IdentityName;
use crate::tables::{subloop_generated, LoopTable};
use crate::Check;

fn find2(n: usize, from: [usize; 2], mut bad: impl FnMut(usize, usize) -> bool) -> Check {
    for x in from[0]..n {
        for y in from[1]..n {
            if bad(x, y) {
                return Check::fail(vec![x, y]);
            }
        }
    }
    Check::pass()
}

fn power_associative(l: &LoopTable) -> Check {
    let n = l.order();
    let mut checked = vec![false; n];
    for x in 0..n {
        if checked[x] {
            continue;
        }
        let m = subloop_generated(l, &[x]);
        for &a in &m {
            for &b in &m {
                let ab = l.mul(a, b);
                for &c in &m {
                    if l.mul(ab, c) != l.mul(a, l.mul(b, c)) {
                        return Check::fail(vec![x, a, b, c]);
                    }
                }
            }
        }
        // every element of an associative subloop generates an associative subloop
        for &y in &m {
            checked[y] = true;
        }
    }
    Check::pass()
}

/// Evaluates `id` on every assignment. Witness layout: `[x, y]` or
/// `[x, y, z]` in the variable order of [`IdentityName::equation`];
/// power-associativity reports `[x, a, b, c]` with `a, b, c` in `⟨x⟩`.
pub fn brute_check(l: &LoopTable, id: IdentityName) -> Check {
    let n = l.order();
    let m = |a: usize, b: usize| l.mul(a, b);
    let lam = |x: usize| l.left_inverse(x);
    let rho = |x: usize| l.right_inverse(x);
    match id {
        IdentityName::Flexible => find2(n, [1, 1], |x, y| m(m(x, y), x) != m(x, m(y, x))),
        IdentityName::LeftAlternative => find2(n, [1, 1], |x, y| m(x, m(x, y)) != m(m(x, x), y)),
        IdentityName::RightAlternative => find2(n, [1, 1], |x, y| m(m(y, x), x) != m(y, m(x, x))),
        IdentityName::LeftInverseProperty => find2(n, [1, 1], |x, y| m(lam(x), m(x, y)) != y),
        IdentityName::RightInverseProperty => find2(n, [1, 1], |x, y| m(m(y, x), rho(x)) != y),
        IdentityName::CrossInverse => find2(n, [1, 1], |x, y| m(m(x, y), rho(x)) != y),
        IdentityName::AutomorphicInverse => find2(n, [1, 1], |x, y| rho(m(x, y)) != m(rho(x), rho(y))),
        IdentityName::WeakInverse => {
            for x in 1..n {
                for y in 1..n {
                    // the unique z with (xy)z = e
                    let z = l.left_div(m(x, y), 0);
                    if m(x, m(y, z)) != 0 {
                        return Check::fail(vec![x, y, z]);
                    }
                }
            }
            Check::pass()
        }
        IdentityName::LeftBol => {
            for x in 1..n {
                let rx = l.row(x);
                for y in 0..n {
                    let (ra, ry) = (l.row(m(x, m(y, x))), l.row(y));
                    let bad = (1..n).find(|&z| ra[z] != rx[ry[rx[z] as usize] as usize]);
                    if let Some(z) = bad {
                        return Check::fail(vec![x, y, z]);
                    }
                }
            }
            Check::pass()
        }
        IdentityName::RightBol => {
            // columns, so that col(b)[z] = z·b
            let mut cols = vec![0u16; n * n];
            for a in 0..n {
                for (b, &v) in l.row(a).iter().enumerate() {
                    cols[b * n + a] = v;
                }
            }
            let col = |b: usize| &cols[b * n..(b + 1) * n];
            for x in 1..n {
                let cx = col(x);
                for y in 0..n {
                    let (cb, cy) = (col(m(m(x, y), x)), col(y));
                    let bad = (1..n).find(|&z| cb[z] != cx[cy[cx[z] as usize] as usize]);
                    if let Some(z) = bad {
                        return Check::fail(vec![x, y, z]);
                    }
                }
            }
            Check::pass()
        }
        IdentityName::Moufang => {
            let left = brute_check(l, IdentityName::LeftBol);
            if left.holds {
                brute_check(l, IdentityName::RightBol)
            } else {
                left
            }
        }
        IdentityName::PowerAssociative => power_associative(l),
        IdentityName::Associative => {
            for x in 1..n {
                let rx = l.row(x);
                for y in 1..n {
                    let (rxy, ry) = (l.row(m(x, y)), l.row(y));
                    let bad = (1..n).find(|&z| rxy[z] != rx[ry[z] as usize]);
                    if let Some(z) = bad {
                        return Check::fail(vec![x, y, z]);
                    }
                }
            }
            Check::pass()
        }
        IdentityName::TotallySymmetric => find2(n, [1, 0], |x, y| m(x, y) != m(y, x) || m(x, m(x, y)) != y),
    }
}

/// All fourteen checks, in [`IdentityName::ALL`] order. Moufang reuses the
/// two Bol results.
pub fn brute_check_all(l: &LoopTable) -> Vec<(IdentityName, Check)> {
    let mut out: Vec<(IdentityName, Check)> = Vec::with_capacity(IdentityName::ALL.len());
    for id in IdentityName::ALL {
        let check = if id == IdentityName::Moufang {
            let get = |k: IdentityName| out.iter().find(|(i, _)| *i == k).map(|(_, c)| c.clone());
            let (left, right) = (get(IdentityName::LeftBol).unwrap(), get(IdentityName::RightBol).unwrap());
            if left.holds {
                right
            } else {
                left
            }
        } else {
            brute_check(l, id)
        };
        out.push((id, check));
    }
    out
}
