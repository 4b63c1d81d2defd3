use steinerlike::identities::{brute_check, IdentityName};
use steinerlike::steiner::{construct_sts, is_steiner_loop, loop_from_sts};
use steinerlike::tables::{centre, nuclei};

/// For a Steiner loop, left Bol, right Bol and being a group (necessarily
/// an elementary abelian 2-group) are the same condition.
#[test]
fn bol_iff_elementary_abelian() {
    let mut groups = Vec::new();
    for n in [3, 7, 9, 13, 15] {
        let l = loop_from_sts(&construct_sts(n).unwrap());
        assert!(is_steiner_loop(&l));
        let left = brute_check(&l, IdentityName::LeftBol).holds;
        let right = brute_check(&l, IdentityName::RightBol).holds;
        let group = l.is_associative();
        assert_eq!(left, right, "n = {n}");
        assert_eq!(left, group, "n = {n}");
        if group {
            assert!((1..l.order()).all(|x| l.mul(x, x) == 0));
            groups.push(n);
        }
    }
    // the order-4 and Fano loops are Z2^2 and Z2^3; 9 and 13 are not powers of two minus one
    assert!(groups.contains(&3) && groups.contains(&7));
    assert!(!groups.contains(&9) && !groups.contains(&13));
}

#[test]
fn steiner_loops_are_totally_symmetric() {
    for n in [3, 7, 9, 13, 15, 19] {
        let l = loop_from_sts(&construct_sts(n).unwrap());
        assert!(brute_check(&l, IdentityName::TotallySymmetric).holds);
        assert!(brute_check(&l, IdentityName::PowerAssociative).holds);
        assert!(brute_check(&l, IdentityName::AutomorphicInverse).holds);
    }
}

#[test]
fn nonassociative_steiner_loop_has_trivial_nucleus() {
    let l = loop_from_sts(&construct_sts(9).unwrap());
    let nuc = nuclei(&l);
    assert_eq!(nuc.nucleus.members, vec![0]);
    assert_eq!(centre(&l).members, vec![0]);
}
