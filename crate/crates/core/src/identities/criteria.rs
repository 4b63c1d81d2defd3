//! Closed-form criteria for identities of extensions by weighted Steiner
//! loops. Nothing here builds a product table.
//!
//! Notation: `F(x) = f(x, x)`, `K = {h(x)h(y) : x ≠ y}`, core identity
//! `h(x)h(y)h(x)h(xy) = F(x)`.

use std::borrow::Cow;
use std::cell::OnceCell;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::IdentityName;
use crate::extension::{ExtensionSpec, Variant};
use crate::steiner::is_steiner_loop;
use crate::weighted::{check_core_identity, check_square_identity, recover_weight, WeightedError, WeightedSteinerLoop};
use crate::Check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("the criterion needs a weight h but the factor system is not Steiner-like")]
    NotSteinerLike,
}

/// One named sub-condition of a criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: Cow<'static, str>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub holds: bool,
    /// Witness of the first failing sub-condition.
    pub witness: Option<Vec<usize>>,
    pub condition_breakdown: Vec<Condition>,
    /// For a Bol law: it holds while the opposite Bol criterion fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proper: Option<bool>,
}

impl CriterionReport {
    fn from_conditions(conditions: Vec<Condition>, proper: Option<bool>) -> Self {
        let holds = conditions.iter().all(|c| c.holds);
        let witness = conditions.iter().find(|c| !c.holds).and_then(|c| c.witness.clone());
        Self { holds, witness, condition_breakdown: conditions, proper }
    }
}

fn cond(name: &'static str, check: Check) -> Condition {
    Condition { name: Cow::Borrowed(name), holds: check.holds, witness: check.witness }
}

fn first(points: impl Iterator<Item = usize>, mut bad: impl FnMut(usize) -> bool) -> Check {
    Check::from_witness(points.into_iter().find(|&x| bad(x)).map(|x| vec![x]))
}

fn first_pair(n: usize, distinct: bool, mut bad: impl FnMut(usize, usize) -> bool) -> Check {
    for x in 1..n {
        for y in 1..n {
            if (!distinct || x != y) && bad(x, y) {
                return Check::fail(vec![x, y]);
            }
        }
    }
    Check::pass()
}

const MEMO_SLOTS: usize = 14;

/// Evaluates criteria for one weighted loop. Sub-conditions are computed at
/// most once and shared between identities and variants.
pub struct Conditions<'a> {
    w: &'a WeightedSteinerLoop,
    n: usize,
    memo: [OnceCell<Condition>; MEMO_SLOTS],
    square: OnceCell<Option<Condition>>,
}

impl<'a> Conditions<'a> {
    pub fn new(w: &'a WeightedSteinerLoop) -> Self {
        Self { w, n: w.s().order(), memo: Default::default(), square: OnceCell::new() }
    }

    fn cached(&self, slot: usize, make: impl FnOnce() -> Condition) -> Condition {
        self.memo[slot].get_or_init(make).clone()
    }

    fn f_central(&self) -> Condition {
        self.cached(0, || {
            let (w, a) = (self.w, self.w.a());
            cond("f central", first_pair(self.n, false, |x, y| !a.is_central(w.f(x, y))))
        })
    }

    fn diag_central(&self) -> Condition {
        self.cached(1, || {
            let (w, a) = (self.w, self.w.a());
            cond("F central", first(1..self.n, |x| !a.is_central(w.diag(x))))
        })
    }

    fn k_central(&self) -> Condition {
        self.cached(2, || {
            let (w, a) = (self.w, self.w.a());
            cond("K central", first_pair(self.n, true, |x, y| !a.is_central(a.mul(w.h(x), w.h(y)))))
        })
    }

    fn core(&self) -> Condition {
        self.cached(3, || cond("core identity", check_core_identity(self.w)))
    }

    fn a_abelian(&self) -> Condition {
        self.cached(4, || {
            let a = self.w.a();
            let m = a.order();
            let bad = (0..m).flat_map(|p| (0..m).map(move |q| (p, q))).find(|&(p, q)| !a.commute(p, q));
            cond("A abelian", Check::from_witness(bad.map(|(p, q)| vec![p, q])))
        })
    }

    fn square(&self) -> Option<Condition> {
        let make = || match check_square_identity(self.w) {
            Ok(c) => Some(cond("square identity", c)),
            Err(WeightedError::NotAbelian) => None,
            Err(e) => unreachable!("square identity: {e}"),
        };
        self.square.get_or_init(make).clone()
    }

    /// `F(x) = s·h(x)` for one `s`, namely `s = F(1) h(1)⁻¹`.
    fn diag_is_shifted_weight(&self) -> Condition {
        self.cached(5, || {
            let (w, a) = (self.w, self.w.a());
            if self.n < 2 {
                return cond("F = s·h", Check::pass());
            }
            let s = a.mul(w.diag(1), a.inv(w.h(1)));
            cond("F = s·h", first(1..self.n, |x| w.diag(x) != a.mul(s, w.h(x))))
        })
    }

    fn s_elementary_abelian(&self) -> Condition {
        self.cached(6, || {
            // a Steiner loop is an elementary abelian 2-group iff it is associative
            let witness = self.w.s().associativity_witness();
            cond("S elementary abelian 2-group", Check::from_witness(witness.map(|t| t.to_vec())))
        })
    }

    fn t(&self) -> usize {
        if self.n > 1 {
            self.w.h(1)
        } else {
            0
        }
    }

    fn h_constant(&self) -> Condition {
        self.cached(7, || {
            let (w, t) = (self.w, self.t());
            cond("h constant", first(1..self.n, |x| w.h(x) != t))
        })
    }

    fn diag_is_t4(&self) -> Condition {
        self.cached(8, || {
            let (w, a) = (self.w, self.w.a());
            let t4 = a.pow(self.t(), 4);
            cond("F = t^4", first(1..self.n, |x| w.diag(x) != t4))
        })
    }

    fn t_power_central(&self, k: i64) -> Condition {
        let (slot, name) = match k {
            2 => (12, "t^2 central"),
            4 => (13, "t^4 central"),
            _ => unreachable!("only t^2 and t^4 occur"),
        };
        self.cached(slot, || {
            let a = self.w.a();
            let holds = a.is_central(a.pow(self.t(), k));
            cond(name, Check { holds, witness: None })
        })
    }

    fn h_range_commutative(&self) -> Condition {
        self.cached(9, || {
            let (w, a) = (self.w, self.w.a());
            cond("h values commute", first_pair(self.n, true, |x, y| !a.commute(w.h(x), w.h(y))))
        })
    }

    fn a_exponent_two(&self) -> Condition {
        self.cached(10, || {
            let a = self.w.a();
            let bad = (0..a.order()).find(|&p| a.mul(p, p) != 0);
            cond("A elementary abelian 2-group", Check::from_witness(bad.map(|p| vec![p])))
        })
    }

    fn diag_trivial(&self) -> Condition {
        self.cached(11, || {
            let w = self.w;
            cond("F trivial", first(1..self.n, |x| w.diag(x) != 0))
        })
    }

    fn small(&self) -> bool {
        self.n <= 4
    }

    fn left_alternative(&self) -> Vec<Condition> {
        vec![self.diag_central(), self.k_central(), self.core()]
    }

    fn group(&self) -> Vec<Condition> {
        if self.small() {
            self.left_alternative()
        } else {
            vec![self.s_elementary_abelian(), self.h_constant(), self.diag_is_t4(), self.t_power_central(2)]
        }
    }

    /// The one-sided Bol law that need not force a group.
    fn weak_bol(&self) -> Vec<Condition> {
        if self.small() {
            vec![self.h_range_commutative(), self.diag_central(), self.core()]
        } else {
            vec![self.s_elementary_abelian(), self.h_constant(), self.diag_is_t4(), self.t_power_central(4)]
        }
    }

    fn totally_symmetric(&self) -> Vec<Condition> {
        let mut out = vec![self.a_exponent_two(), self.diag_trivial()];
        if self.n > 2 {
            out.push(self.h_constant());
        }
        out
    }

    fn standard(&self, id: IdentityName) -> Vec<Condition> {
        use IdentityName::*;
        match id {
            Flexible => vec![self.f_central()],
            RightAlternative | RightInverseProperty => vec![self.diag_central(), self.core()],
            LeftAlternative | LeftInverseProperty => self.left_alternative(),
            CrossInverse => vec![self.a_abelian(), self.core()],
            AutomorphicInverse => {
                let mut out = vec![self.a_abelian()];
                out.extend(self.square());
                out
            }
            WeakInverse => vec![self.f_central(), self.diag_is_shifted_weight()],
            LeftBol | Moufang | Associative => self.group(),
            RightBol => self.weak_bol(),
            PowerAssociative => vec![self.diag_central()],
            TotallySymmetric => self.totally_symmetric(),
        }
    }

    /// `f central` followed by the Standard conditions.
    fn central_then_standard(&self, id: IdentityName) -> Vec<Condition> {
        let mut out = vec![self.f_central()];
        out.extend(self.standard(id).into_iter().filter(|c| c.name != "f central"));
        out
    }

    fn conditions(&self, variant: Variant, id: IdentityName) -> Vec<Condition> {
        use IdentityName::*;
        match (variant, id) {
            (_, PowerAssociative | TotallySymmetric) | (Variant::Standard, _) => self.standard(id),
            (Variant::StarStar, LeftAlternative | LeftInverseProperty) => {
                vec![self.diag_central(), self.core()]
            }
            (Variant::StarStar, LeftBol) => self.weak_bol(),
            (Variant::Star | Variant::StarStar, _) => self.central_then_standard(id),
        }
    }

    pub fn report(&self, variant: Variant, id: IdentityName) -> CriterionReport {
        let conditions = self.conditions(variant, id);
        let opposite = match (variant, id) {
            (Variant::StarStar, IdentityName::LeftBol) => Some(IdentityName::RightBol),
            (Variant::StarStar, IdentityName::RightBol) => None,
            (_, IdentityName::RightBol) => Some(IdentityName::LeftBol),
            _ => None,
        };
        let holds = conditions.iter().all(|c| c.holds);
        let proper = opposite.map(|o| holds && !self.conditions(variant, o).iter().all(|c| c.holds));
        CriterionReport::from_conditions(conditions, proper)
    }
}

/// Flexibility of the Star product, exactly: for all `x, y ≠ e` the element
/// `g = f(x, xy)⁻¹ f(x, y)` is central and equals `f(y, x) f(xy, x)⁻¹`.
/// Unlike the Star flexible criterion this does not require `f` central.
pub fn star_flexible_exact(w: &WeightedSteinerLoop) -> Check {
    let (s, a) = (w.s(), w.a());
    first_pair(s.order(), false, |x, y| {
        let xy = s.mul(x, y);
        let g = a.mul(a.inv(w.f(x, xy)), w.f(x, y));
        !a.is_central(g) || g != a.mul(w.f(y, x), a.inv(w.f(xy, x)))
    })
}

/// The criterion for `id` on the `variant` extension of `A` by `(S, h)`.
pub fn criterion(w: &WeightedSteinerLoop, variant: Variant, id: IdentityName) -> CriterionReport {
    Conditions::new(w).report(variant, id)
}

/// The criterion for a raw factor system. The weight is recovered first;
/// without one only associativity of a Standard extension is decidable, by
/// `S` associative, `f` central and `f(x,y) f(xy,z) = f(x,yz) f(y,z)`.
pub fn criterion_raw(spec: &ExtensionSpec, id: IdentityName) -> Result<CriterionReport, CriterionError> {
    if is_steiner_loop(&spec.s) {
        if let Ok(w) = recover_weight(spec) {
            return Ok(criterion(&w, spec.variant, id));
        }
    }
    if id != IdentityName::Associative || spec.variant != Variant::Standard {
        return Err(CriterionError::NotSteinerLike);
    }
    let (s, a, f) = (&*spec.s, &*spec.a, &spec.f);
    let n = s.order();
    let s_assoc = cond("S associative", Check::from_witness(s.associativity_witness().map(|t| t.to_vec())));
    let central = cond("f central", first_pair(n, false, |x, y| !a.is_central(f.get(x, y))));
    let mut cocycle = Check::pass();
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = a.mul(f.get(x, y), f.get(s.mul(x, y), z));
                let rhs = a.mul(f.get(x, s.mul(y, z)), f.get(y, z));
                if lhs != rhs {
                    cocycle = Check::fail(vec![x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    let conditions = vec![s_assoc, central, cond("cocycle", cocycle)];
    Ok(CriterionReport::from_conditions(conditions, None))
}
