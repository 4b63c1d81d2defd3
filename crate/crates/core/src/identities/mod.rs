//! Loop identities: exhaustive checks on Cayley tables, closed-form criteria
//! on weighted Steiner loops, and the harness that compares the two.

mod brute;
mod criteria;
mod harness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use brute::{brute_check, brute_check_all};
pub use criteria::{
    criterion, criterion_raw, star_flexible_exact, Condition, Conditions, CriterionError, CriterionReport,
};
pub use harness::{
    equivalence_harness, instance_families, DiagMode, Disagreement, FamilyConfig, HarnessConfig, HarnessReport,
    Instance, SchemaTally, DEFAULT_SEED,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityName {
    Flexible,
    LeftAlternative,
    RightAlternative,
    LeftInverseProperty,
    RightInverseProperty,
    CrossInverse,
    AutomorphicInverse,
    WeakInverse,
    LeftBol,
    RightBol,
    Moufang,
    PowerAssociative,
    Associative,
    TotallySymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown identity {0:?}")]
pub struct UnknownIdentity(pub String);

impl IdentityName {
    pub const ALL: [IdentityName; 14] = [
        IdentityName::Flexible,
        IdentityName::LeftAlternative,
        IdentityName::RightAlternative,
        IdentityName::LeftInverseProperty,
        IdentityName::RightInverseProperty,
        IdentityName::CrossInverse,
        IdentityName::AutomorphicInverse,
        IdentityName::WeakInverse,
        IdentityName::LeftBol,
        IdentityName::RightBol,
        IdentityName::Moufang,
        IdentityName::PowerAssociative,
        IdentityName::Associative,
        IdentityName::TotallySymmetric,
    ];

    /// The ten basic weak-associativity laws, flexible through right Bol.
    pub const BASIC: [IdentityName; 10] = [
        IdentityName::Flexible,
        IdentityName::LeftAlternative,
        IdentityName::RightAlternative,
        IdentityName::LeftInverseProperty,
        IdentityName::RightInverseProperty,
        IdentityName::CrossInverse,
        IdentityName::AutomorphicInverse,
        IdentityName::WeakInverse,
        IdentityName::LeftBol,
        IdentityName::RightBol,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityName::Flexible => "flexible",
            IdentityName::LeftAlternative => "left_alternative",
            IdentityName::RightAlternative => "right_alternative",
            IdentityName::LeftInverseProperty => "left_inverse_property",
            IdentityName::RightInverseProperty => "right_inverse_property",
            IdentityName::CrossInverse => "cross_inverse",
            IdentityName::AutomorphicInverse => "automorphic_inverse",
            IdentityName::WeakInverse => "weak_inverse",
            IdentityName::LeftBol => "left_bol",
            IdentityName::RightBol => "right_bol",
            IdentityName::Moufang => "moufang",
            IdentityName::PowerAssociative => "power_associative",
            IdentityName::Associative => "associative",
            IdentityName::TotallySymmetric => "totally_symmetric",
        }
    }

    /// The law as an equation over the table.
    pub fn equation(self) -> &'static str {
        match self {
            IdentityName::Flexible => "(x·y)·x = x·(y·x)",
            IdentityName::LeftAlternative => "x·(x·y) = (x·x)·y",
            IdentityName::RightAlternative => "(y·x)·x = y·(x·x)",
            IdentityName::LeftInverseProperty => "x^λ·(x·y) = y",
            IdentityName::RightInverseProperty => "(y·x)·x^ρ = y",
            IdentityName::CrossInverse => "(x·y)·x^ρ = y",
            IdentityName::AutomorphicInverse => "(x·y)^ρ = x^ρ·y^ρ",
            IdentityName::WeakInverse => "(x·y)·z = e implies x·(y·z) = e",
            IdentityName::LeftBol => "(x·(y·x))·z = x·(y·(x·z))",
            IdentityName::RightBol => "z·((x·y)·x) = ((z·x)·y)·x",
            IdentityName::Moufang => "left Bol and right Bol",
            IdentityName::PowerAssociative => "every one-generated subloop is associative",
            IdentityName::Associative => "(x·y)·z = x·(y·z)",
            IdentityName::TotallySymmetric => "x·y = y·x and x·(x·y) = y",
        }
    }
}

impl std::fmt::Display for IdentityName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IdentityName {
    type Err = UnknownIdentity;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityName::ALL.into_iter().find(|i| i.name() == s).ok_or_else(|| UnknownIdentity(s.to_string()))
    }
}
