//! JSON wire forms for loops, groups, weighted loops, extension specs and
//! weighted triple systems, with conversions to the validated types.
//!
//! Maps defined on loop elements or points use string keys (`{"1": 3}`), as
//! JSON objects require.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{ExtensionError, ExtensionSpec, FactorSystem, Variant};
use crate::fischer::{validate_weighted_sts, FischerError, WeightedSts};
use crate::steiner::{construct_sts, loop_from_sts, sts_from_loop, SteinerError, SteinerTripleSystem, StsJson};
use crate::tables::{make_group, GroupKind, GroupTable, LoopTable, TableError, TableJson};
use crate::weighted::{WeightedError, WeightedSteinerLoop};

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("unknown name {0:?}: expected \"sts:N\" or a group name such as \"S3\"")]
    UnknownName(String),
    #[error("map key {0:?} is not an element index")]
    BadKey(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Steiner(#[from] SteinerError),
    #[error(transparent)]
    Weighted(#[from] WeightedError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Fischer(#[from] FischerError),
}

/// A loop given as a triple system, an explicit table, or a name:
/// `"sts:N"` for the Steiner loop of the constructed `N`-point system, or
/// any group name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LoopSource {
    Sts(StsJson),
    Table(TableJson),
    Named(String),
}

impl LoopSource {
    pub fn resolve(&self) -> Result<LoopTable, SourceError> {
        match self {
            LoopSource::Sts(raw) => Ok(loop_from_sts(&SteinerTripleSystem::try_from(raw.clone())?)),
            LoopSource::Table(t) => Ok(t.clone().into_loop()?),
            LoopSource::Named(name) => {
                if let Some(n) = name.strip_prefix("sts:") {
                    let n = n.parse().map_err(|_| SourceError::UnknownName(name.clone()))?;
                    return Ok(loop_from_sts(&construct_sts(n)?));
                }
                let kind: GroupKind = name.parse().map_err(|_| SourceError::UnknownName(name.clone()))?;
                Ok(make_group(&kind)?.as_loop().clone())
            }
        }
    }

    /// The triple system when `l` is a Steiner loop, otherwise its table.
    pub fn describe(l: &LoopTable) -> Self {
        match sts_from_loop(l) {
            Ok(sts) => LoopSource::Sts(StsJson::from(&sts)),
            Err(_) => LoopSource::Table(l.into()),
        }
    }
}

/// A group given by name or by table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Named(GroupKind),
    Table(TableJson),
}

impl GroupSource {
    pub fn resolve(&self) -> Result<GroupTable, SourceError> {
        match self {
            GroupSource::Named(kind) => Ok(make_group(kind)?),
            GroupSource::Table(t) => Ok(t.clone().into_group()?),
        }
    }
}

fn keyed(map: &BTreeMap<String, usize>) -> Result<BTreeMap<usize, usize>, SourceError> {
    map.iter().map(|(k, &v)| k.parse().map(|k| (k, v)).map_err(|_| SourceError::BadKey(k.clone()))).collect()
}

fn stringly(values: &[usize], offset: usize) -> BTreeMap<String, usize> {
    values.iter().enumerate().map(|(i, &v)| ((i + offset).to_string(), v)).collect()
}

/// `{"s": …, "a": …, "h": {"1": i, …}, "diag": {"1": j, …}}`, with an
/// optional `"variant"` used when the file is read as an extension spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedJson {
    pub s: LoopSource,
    pub a: GroupSource,
    pub h: BTreeMap<String, usize>,
    pub diag: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

impl WeightedJson {
    pub fn resolve(&self) -> Result<WeightedSteinerLoop, SourceError> {
        let s = Arc::new(self.s.resolve()?);
        let a = Arc::new(self.a.resolve()?);
        Ok(WeightedSteinerLoop::from_maps(s, a, &keyed(&self.h)?, &keyed(&self.diag)?)?)
    }

    pub fn describe(w: &WeightedSteinerLoop, a: GroupSource) -> Self {
        WeightedJson {
            s: LoopSource::describe(w.s()),
            a,
            h: stringly(w.h_values(), 1),
            diag: stringly(w.diag_values(), 1),
            variant: None,
        }
    }
}

/// `{"s": …, "a": …, "f": [[...]], "variant": "standard"|"star"|"starstar"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub s: LoopSource,
    pub a: GroupSource,
    pub f: Vec<Vec<usize>>,
    #[serde(default = "standard")]
    pub variant: Variant,
}

fn standard() -> Variant {
    Variant::Standard
}

impl ExtensionJson {
    pub fn resolve(&self) -> Result<ExtensionSpec, SourceError> {
        let s = Arc::new(self.s.resolve()?);
        let a = Arc::new(self.a.resolve()?);
        Ok(ExtensionSpec::new(s, a, FactorSystem::from_rows(&self.f)?, self.variant)?)
    }

    pub fn describe(spec: &ExtensionSpec, a: GroupSource) -> Self {
        ExtensionJson { s: LoopSource::describe(&spec.s), a, f: spec.f.rows(), variant: spec.variant }
    }
}

/// Either spec form. A weighted file without a variant means Standard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecJson {
    Weighted(WeightedJson),
    Extension(ExtensionJson),
}

/// A resolved spec. The weighted form is kept when there is one, since the
/// criteria are stated in terms of `h`.
#[derive(Debug, Clone)]
pub struct ResolvedSpec {
    pub spec: ExtensionSpec,
    pub weighted: Option<WeightedSteinerLoop>,
}

impl SpecJson {
    pub fn resolve(&self) -> Result<ResolvedSpec, SourceError> {
        match self {
            SpecJson::Weighted(wj) => {
                let w = wj.resolve()?;
                let spec = w.spec(wj.variant.unwrap_or(Variant::Standard));
                Ok(ResolvedSpec { spec, weighted: Some(w) })
            }
            SpecJson::Extension(ej) => Ok(ResolvedSpec { spec: ej.resolve()?, weighted: None }),
        }
    }
}

/// `{"sts": …, "g": …, "w": {"1": i, …}}`, one weight per point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedStsJson {
    pub sts: StsJson,
    pub g: GroupSource,
    pub w: BTreeMap<String, usize>,
}

impl WeightedStsJson {
    pub fn resolve(&self) -> Result<WeightedSts, SourceError> {
        let sts = SteinerTripleSystem::try_from(self.sts.clone())?;
        let g = Arc::new(self.g.resolve()?);
        let map = keyed(&self.w)?;
        let n = sts.point_count();
        if map.len() != n || map.keys().any(|&k| k == 0 || k > n) {
            return Err(FischerError::Precondition(format!("w must be defined exactly on 1..={n}")).into());
        }
        let weights: Vec<usize> = map.into_values().collect();
        Ok(validate_weighted_sts(sts, g, &weights)?)
    }

    pub fn describe(ws: &WeightedSts, g: GroupSource) -> Self {
        WeightedStsJson { sts: StsJson::from(&ws.sts), g, w: stringly(ws.weights(), 1) }
    }
}
