//! Extensions of groups by weighted Steiner loops.
//!
//! Finite loops are Cayley tables ([`tables`]); a weighted Steiner loop
//! ([`weighted`]) determines a factor system and three extension loops
//! ([`extension`]) whose loop identities are checked both by exhaustive
//! scans and by closed criteria ([`identities`]).

use serde::{Deserialize, Serialize};

pub mod extension;
pub mod fischer;
pub mod identities;
pub mod morphisms;
pub mod source;
pub mod steiner;
pub mod tables;
pub mod translations;
pub mod weighted;

/// Outcome of a universally quantified check: the least violating
/// assignment when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Check {
    pub fn pass() -> Self {
        Self { holds: true, witness: None }
    }

    pub fn fail(witness: Vec<usize>) -> Self {
        Self { holds: false, witness: Some(witness) }
    }

    pub fn from_witness(witness: Option<Vec<usize>>) -> Self {
        Self { holds: witness.is_none(), witness }
    }
}
