use std::path::Path;

use serde_json::{json, Value};

use steinerlike::fischer::{
    distributive_quasigroup, fischer_space, hall_system_check, is_restricted_fischer, quasigroup_properties,
    FischerError,
};
use steinerlike::morphisms::{automorphism_group, find_isomorphisms, SearchOptions};
use steinerlike::source::WeightedStsJson;
use steinerlike::translations::{full_group_decomposition, iota_maps, translation_groups, TranslationError};

use crate::check::load_spec;
use crate::{read_json, CliError, Outcome, Settings};

pub fn translations(path: &Path, settings: &Settings) -> Result<Outcome, CliError> {
    let spec = load_spec(path, None)?.spec;
    settings.check_order(spec.order())?;
    let report = translation_groups(&spec, settings.closure_cap)?.report;
    let iota = iota_maps(&spec)?;
    // the decomposition needs every ι to be an automorphism; report rather than fail
    let decomposition = match full_group_decomposition(&spec, settings.closure_cap) {
        Ok(d) => json!(d),
        Err(TranslationError::HypothesisFailed(reason)) => json!({"hypothesis_failed": reason}),
        Err(e) => return Err(e.into()),
    };
    Outcome::ok(json!({
        "variant": spec.variant,
        "translations": report,
        "iota": {"all_automorphisms": iota.all_automorphisms, "f_central": iota.f_central, "witness": iota.witness},
        "decomposition": decomposition,
    }))
}

pub fn fischer(path: &Path) -> Result<Outcome, CliError> {
    let raw: WeightedStsJson = read_json(path)?;
    let ws = raw.resolve()?;
    let image = ws.image();
    let restricted = is_restricted_fischer(&ws.g, &image);
    let (space, phi) = fischer_space(&ws)?;
    let hall = hall_system_check(&space);
    let quasigroup: Value = match distributive_quasigroup(&ws) {
        Ok(m) => json!(quasigroup_properties(&m)),
        Err(FischerError::NotBijective(x, y)) => json!({"not_bijective": [x, y]}),
        Err(e) => return Err(e.into()),
    };
    Outcome::ok(json!({
        "points": ws.sts.point_count(),
        "group_order": ws.g.order(),
        "image": image,
        "restricted_fischer": restricted,
        "fischer_space": {"points": space.points.len(), "lines": space.lines.len()},
        "phi": phi,
        "hall_system": hall,
        "distributive_quasigroup": quasigroup,
    }))
}

pub fn morphisms(path: &Path, to: Option<&Path>, prune: bool, settings: &Settings) -> Result<Outcome, CliError> {
    let spec = load_spec(path, None)?.spec;
    settings.check_order(spec.order())?;
    match to {
        None => {
            if !prune {
                return Err(CliError::Usage("--no-prune needs --to".into()));
            }
            Outcome::ok(json!({"automorphisms": automorphism_group(&spec)?}))
        }
        Some(other) => {
            let other = load_spec(other, None)?.spec;
            settings.check_order(other.order())?;
            let search = find_isomorphisms(&spec, &other, SearchOptions { prune })?;
            Outcome::ok(json!({"isomorphic": !search.witnesses.is_empty(), "prune": prune, "search": search}))
        }
    }
}
